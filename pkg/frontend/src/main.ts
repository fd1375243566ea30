import { Api } from "./api.js";
import { App } from "./app.js";

const root = typeof document === "undefined" ? null : document.getElementById("app");
if (root) {
  const app = new App(new Api(""), root);
  app.mount();
  void app.newGame([5, 4, 2, 1], "normal", false);
}
