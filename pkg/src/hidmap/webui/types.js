/**
 * JSON shapes exchanged with the session server. Field names and value
 * conventions match the server's serialization exactly; these interfaces
 * only describe the wire format, they never transform it.
 */
export {};
