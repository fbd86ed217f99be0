import { mount } from "./app.js";

declare global {
  interface Window {
    NATURENAV_API_BASE?: string;
  }
}

const root = document.getElementById("app");
if (root) {
  mount(root, { apiBaseUrl: window.NATURENAV_API_BASE ?? "http://127.0.0.1:8080" });
}
