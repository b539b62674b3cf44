/** Browser bootstrap: example picker, focusable chart container, polite
 * live region, status bar, landmark menus, and key handling per the
 * canonical contract.
 */

import { SessionClient } from "./api.js";
import { ChartController, ChartHost, MENU_LEVELS } from "./controller.js";
import type { DescriptionConfigPayload, Landmark } from "./types.js";

const HELP_TEXT =
    "Arrows move structurally; Shift+Left/Right move laterally across branches; " +
    "w, a, s, d move spatially; Home and End jump to the first and last sibling; " +
    "Escape returns to the root; Tab opens the landmark menus; b switches branches.";

function element<T extends HTMLElement>(id: string): T {
    const found = document.getElementById(id);
    if (!found) throw new Error(`missing element #${id}`);
    return found as T;
}

class DomHost implements ChartHost {
    private readonly chart = element<HTMLDivElement>("chart");
    private readonly live = element<HTMLDivElement>("live-region");
    private readonly status = element<HTMLDivElement>("status-bar");
    private readonly error = element<HTMLDivElement>("error-banner");
    private readonly menus = element<HTMLDivElement>("landmark-menus");
    private readonly help = element<HTMLDivElement>("help-text");

    setChart(svg: string): void {
        this.chart.innerHTML = svg;
    }

    announce(text: string): void {
        this.live.textContent = text;
    }

    setStatus(text: string): void {
        this.status.textContent = text;
    }

    showError(text: string): void {
        this.error.textContent = text;
        this.error.hidden = false;
    }

    clearError(): void {
        this.error.hidden = true;
        this.error.textContent = "";
    }

    openMenu(): void {
        const first = this.menus.querySelector("select");
        if (first) (first as HTMLSelectElement).focus();
    }

    showHelp(): void {
        this.help.hidden = !this.help.hidden;
    }
}

async function refreshMenus(controller: ChartController): Promise<void> {
    const menusRoot = element<HTMLDivElement>("landmark-menus");
    menusRoot.innerHTML = "";
    const menus = await controller.landmarkMenus();
    menus.forEach((menu, index) => {
        const wrapper = document.createElement("label");
        wrapper.className = "menu";
        wrapper.textContent = menu.name;
        const select = document.createElement("select");
        select.setAttribute("aria-label", `${menu.name} landmarks`);
        const placeholder = document.createElement("option");
        placeholder.value = "";
        placeholder.textContent = `jump to a ${MENU_LEVELS[index].name.toLowerCase().replace(/s$/, "")}...`;
        select.appendChild(placeholder);
        for (const entry of menu.entries as Landmark[]) {
            const option = document.createElement("option");
            option.value = entry.id;
            option.textContent = entry.label;
            select.appendChild(option);
        }
        select.addEventListener("change", () => {
            if (select.value) {
                void controller.jumpTo(select.value).then(() => {
                    select.value = "";
                    element<HTMLDivElement>("chart").focus();
                });
            }
        });
        wrapper.appendChild(select);
        menusRoot.appendChild(wrapper);
    });
}

async function boot(): Promise<void> {
    const api = new SessionClient("");
    const host = new DomHost();
    const controller = new ChartController(api, host);

    element<HTMLDivElement>("help-text").textContent = HELP_TEXT;

    const picker = element<HTMLSelectElement>("example-picker");
    const composition = element<HTMLSelectElement>("composition-picker");
    const verbosity = element<HTMLSelectElement>("verbosity-picker");

    const { examples } = await api.listExamples();
    for (const entry of examples) {
        const option = document.createElement("option");
        option.value = entry.name;
        option.textContent = entry.title ?? entry.name;
        picker.appendChild(option);
    }

    const load = async () => {
        const config: DescriptionConfigPayload = {
            composition: composition.value as DescriptionConfigPayload["composition"],
            verbosity: verbosity.value as DescriptionConfigPayload["verbosity"],
        };
        try {
            await controller.start(picker.value, config);
            await refreshMenus(controller);
            element<HTMLDivElement>("chart").focus();
        } catch (error) {
            host.showError(`Could not load example: ${(error as Error).message}`);
        }
    };

    picker.addEventListener("change", () => void load());
    composition.addEventListener("change", () => void load());
    verbosity.addEventListener("change", () => void load());

    const chart = element<HTMLDivElement>("chart");
    chart.addEventListener("keydown", (event: KeyboardEvent) => {
        const consumed = controller.handleKey({
            key: event.key,
            shiftKey: event.shiftKey,
            ctrlKey: event.ctrlKey,
            altKey: event.altKey,
            metaKey: event.metaKey,
            repeat: event.repeat,
        });
        if (consumed) event.preventDefault();
    });

    if (examples.length) {
        picker.value = examples[0].name;
        await load();
    }
}

void boot();
