/** Page entry point: locate the fixed page chrome and boot the app. */
import { App, type AppRefs } from "./app.js";

function byId<T extends Element>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) {
    throw new Error(`missing element #${id}`);
  }
  return el as unknown as T;
}

async function start(): Promise<void> {
  const refs: AppRefs = {
    overview: byId<SVGSVGElement>("overview"),
    detailPath: byId<HTMLElement>("detail-path"),
    detailPct: byId<HTMLElement>("detail-pct"),
    detailShape: byId<SVGSVGElement>("detail-shape"),
    legend: byId<HTMLElement>("legend"),
    breadcrumb: byId<HTMLElement>("breadcrumb"),
    backButton: byId<HTMLButtonElement>("back-button"),
    toast: byId<HTMLElement>("toast"),
  };
  try {
    await App.boot(refs);
  } catch (err) {
    refs.toast.textContent = String(err);
    refs.toast.classList.add("visible");
  }
}

if (document.readyState === "loading") {
  document.addEventListener("DOMContentLoaded", () => {
    void start();
  });
} else {
  void start();
}
