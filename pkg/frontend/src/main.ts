import { ApiClient } from "./api.js";
import { AppContext } from "./state.js";
import { startRouter } from "./router.js";

const ctx: AppContext = {
  api: new ApiClient(""),
  doc: document,
  sessionId: null,
};

const nav = document.getElementById("nav");
const outlet = document.getElementById("app");
if (!nav || !outlet) throw new Error("index.html must provide #nav and #app");
startRouter(nav, outlet, ctx);
