/** Session controller: one service command per accepted keypress, strictly
 * serialized (at most one in flight; later keys queue). All navigation
 * logic lives server-side; this class only projects responses into the
 * host UI: chart highlights, the live region, the status path, menus.
 */

import { SessionClient } from "./api.js";
import { applyHighlights } from "./highlight.js";
import { KeyStroke, mapKey } from "./keymap.js";
import { renderChart } from "./svg.js";
import type {
    CommandResponse,
    CorpusExample,
    CreateSessionResponse,
    DescriptionConfigPayload,
    Landmark,
    StructureDump,
    Verb,
} from "./types.js";

export interface ChartHost {
    setChart(svg: string): void;
    /** Mirrors the latest utterance verbatim into the assistive live region. */
    announce(text: string): void;
    setStatus(text: string): void;
    showError(text: string): void;
    clearError(): void;
    openMenu(): void;
    showHelp(): void;
}

export interface ControllerSettings {
    allowKeyRepeat: boolean;
}

export const MENU_LEVELS: { name: string; kinds: string[] }[] = [
    { name: "Branches", kinds: ["facetBranch", "channelBranch", "annotationBranch", "dataSplitNode"] },
    { name: "Sections", kinds: ["intervalNode", "categoryNode", "gridCellNode", "annotationRegion"] },
    { name: "Points", kinds: ["datumLeaf", "tableCell", "listItem"] },
];

export class ChartController {
    private sessionId: string | null = null;
    private baseSvg = "";
    private labels = new Map<string, string>();
    private queue: Promise<void> = Promise.resolve();
    lastResponse: CommandResponse | null = null;
    lastAnnouncement = "";

    constructor(
        private readonly api: SessionClient,
        private readonly host: ChartHost,
        private readonly settings: ControllerSettings = { allowKeyRepeat: false },
    ) {}

    async start(exampleName: string, config?: DescriptionConfigPayload): Promise<CreateSessionResponse> {
        const example: CorpusExample = await this.api.getExample(exampleName);
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

    private indexLabels(dump: StructureDump): void {
        this.labels = new Map(dump.nodes.map((n) => [n.id, n.label]));
    }

    private announce(text: string): void {
        this.lastAnnouncement = text;
        this.host.announce(text);
    }

    /** Key handler bound to the chart container; true when the key was consumed. */
    handleKey(stroke: KeyStroke): boolean {
        const action = mapKey(stroke, this.settings.allowKeyRepeat);
        if (!action) return false;
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
    issue(verb: Verb, target?: string): Promise<CommandResponse | null> {
        const run = this.queue.then(() => this.send(verb, target));
        this.queue = run.then(
            () => undefined,
            () => undefined,
        );
        return run;
    }

    private async send(verb: Verb, target?: string): Promise<CommandResponse | null> {
        if (!this.sessionId) return null;
        let response: CommandResponse;
        try {
            response = await this.api.sendCommand(this.sessionId, verb, target);
        } catch (error) {
            const message = `Connection problem: ${(error as Error).message}`;
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

    jumpTo(targetId: string): Promise<CommandResponse | null> {
        return this.issue("jump", targetId);
    }

    /** Three level-scoped landmark menus, in the service's document order. */
    async landmarkMenus(): Promise<{ name: string; entries: Landmark[] }[]> {
        if (!this.sessionId) return MENU_LEVELS.map((level) => ({ name: level.name, entries: [] }));
        const menus = [];
        for (const level of MENU_LEVELS) {
            const { landmarks } = await this.api.landmarks(this.sessionId, level.kinds);
            menus.push({ name: level.name, entries: landmarks });
        }
        return menus;
    }

    /** Resolves when every queued command has been answered. */
    idle(): Promise<void> {
        return this.queue;
    }
}
