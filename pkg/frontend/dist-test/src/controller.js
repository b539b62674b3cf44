/** Session controller: one service command per accepted keypress, strictly
 * serialized (at most one in flight; later keys queue). All navigation
 * logic lives server-side; this class only projects responses into the
 * host UI: chart highlights, the live region, the status path, menus.
 */
import { applyHighlights } from "./highlight.js";
import { mapKey } from "./keymap.js";
import { renderChart } from "./svg.js";
export const MENU_LEVELS = [
    { name: "Branches", kinds: ["facetBranch", "channelBranch", "annotationBranch", "dataSplitNode"] },
    { name: "Sections", kinds: ["intervalNode", "categoryNode", "gridCellNode", "annotationRegion"] },
    { name: "Points", kinds: ["datumLeaf", "tableCell", "listItem"] },
];
export class ChartController {
    constructor(api, host, settings = { allowKeyRepeat: false }) {
        this.api = api;
        this.host = host;
        this.settings = settings;
        this.sessionId = null;
        this.baseSvg = "";
        this.labels = new Map();
        this.queue = Promise.resolve();
        this.lastResponse = null;
        this.lastAnnouncement = "";
    }
    async start(exampleName, config) {
        const example = await this.api.getExample(exampleName);
        const created = await this.api.createSession({
            example: exampleName,
            descriptionConfig: config,
        });
        this.sessionId = created.sessionId;
        this.lastResponse = null;
        this.indexLabels(created.structureDump);
        this.baseSvg = renderChart(example.spec, example.data);
        this.host.setChart(applyHighlights(this.baseSvg, []));
        this.host.clearError();
        this.announce(created.summaryUtterance);
        this.host.setStatus(this.labels.get(created.structureDump.rootId) ?? "root");
        return created;
    }
    indexLabels(dump) {
        this.labels = new Map(dump.nodes.map((n) => [n.id, n.label]));
    }
    announce(text) {
        this.lastAnnouncement = text;
        this.host.announce(text);
    }
    /** Key handler bound to the chart container; true when the key was consumed. */
    handleKey(stroke) {
        const action = mapKey(stroke, this.settings.allowKeyRepeat);
        if (!action)
            return false;
        if (action.kind === "menu") {
            this.host.openMenu();
            return true;
        }
        if (action.kind === "help") {
            this.host.showHelp();
            return true;
        }
        void this.issue(action.verb);
        return true;
    }
    /** Send one command; commands are applied strictly in arrival order. */
    issue(verb, target) {
        const run = this.queue.then(() => this.send(verb, target));
        this.queue = run.then(() => undefined, () => undefined);
        return run;
    }
    async send(verb, target) {
        if (!this.sessionId)
            return null;
        let response;
        try {
            response = await this.api.sendCommand(this.sessionId, verb, target);
        }
        catch (error) {
            const message = `Connection problem: ${error.message}`;
            this.host.showError(message);
            this.announce(message);
            return null;
        }
        this.lastResponse = response;
        this.host.clearError();
        this.announce(response.utterance);
        this.host.setChart(applyHighlights(this.baseSvg, response.highlightRowIds));
        const path = response.cursorPath.map((id) => this.labels.get(id) ?? id).join(" > ");
        this.host.setStatus(path);
        return response;
    }
    jumpTo(targetId) {
        return this.issue("jump", targetId);
    }
    /** Three level-scoped landmark menus, in the service's document order. */
    async landmarkMenus() {
        if (!this.sessionId)
            return MENU_LEVELS.map((level) => ({ name: level.name, entries: [] }));
        const menus = [];
        for (const level of MENU_LEVELS) {
            const { landmarks } = await this.api.landmarks(this.sessionId, level.kinds);
            menus.push({ name: level.name, entries: landmarks });
        }
        return menus;
    }
    /** Resolves when every queued command has been answered. */
    idle() {
        return this.queue;
    }
}
