/** Browser entry point: boot a session against the service and mount the UI. */

import { SessionApi } from "./api";
import { mount } from "./render";
import { SessionController } from "./state";

async function boot(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const baseUrl = params.get("api") ?? "http://127.0.0.1:8000";
  const api = new SessionApi(baseUrl);

  const [{ datasets }, { algorithms }] = await Promise.all([api.datasets(), api.algorithms()]);
  const dataset = params.get("dataset") ?? datasets[0];
  const algorithm = params.get("algorithm") ?? algorithms[0];

  const controller = new SessionController(api);
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app mount point");
  mount(root, controller);
  await controller.start(dataset, algorithm);
}

void boot();
