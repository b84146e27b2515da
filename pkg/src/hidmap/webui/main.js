/** Page entry point: locate the fixed page chrome and boot the app. */
import { App } from "./app.js";
function byId(id) {
    const el = document.getElementById(id);
    if (el === null) {
        throw new Error(`missing element #${id}`);
    }
    return el;
}
async function start() {
    const refs = {
        overview: byId("overview"),
        detailPath: byId("detail-path"),
        detailPct: byId("detail-pct"),
        detailShape: byId("detail-shape"),
        legend: byId("legend"),
        breadcrumb: byId("breadcrumb"),
        backButton: byId("back-button"),
        toast: byId("toast"),
    };
    try {
        await App.boot(refs);
    }
    catch (err) {
        refs.toast.textContent = String(err);
        refs.toast.classList.add("visible");
    }
}
if (document.readyState === "loading") {
    document.addEventListener("DOMContentLoaded", () => {
        void start();
    });
}
else {
    void start();
}
