import { ApiClient } from "./api.js";
import { ParticipantApp } from "./controller.js";
import { renderApp, setRerender } from "./views.js";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app element");

const app = new ParticipantApp(new ApiClient(""));
const render = () => renderApp(app, root);
setRerender(render);
app.onChange(() => {
    if (app.state) window.location.hash = app.state.id;
    render();
});

const sessionId = window.location.hash.replace(/^#/, "");
void app.loadMeta().then(() => {
    if (sessionId) return app.resumeSession(sessionId);
    render();
    return undefined;
});
