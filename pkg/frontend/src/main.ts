import { App } from "./app.js";
import { resolveConfig } from "./config.js";

const host = document.getElementById("app");
if (host) {
  const app = new App(host, resolveConfig());
  void app.start();
}
