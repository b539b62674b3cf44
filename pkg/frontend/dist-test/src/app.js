/** Browser bootstrap: example picker, focusable chart container, polite
 * live region, status bar, landmark menus, and key handling per the
 * canonical contract.
 */
import { SessionClient } from "./api.js";
import { ChartController, MENU_LEVELS } from "./controller.js";
const HELP_TEXT = "Arrows move structurally; Shift+Left/Right move laterally across branches; " +
    "w, a, s, d move spatially; Home and End jump to the first and last sibling; " +
    "Escape returns to the root; Tab opens the landmark menus; b switches branches.";
function element(id) {
    const found = document.getElementById(id);
    if (!found)
        throw new Error(`missing element #${id}`);
    return found;
}
class DomHost {
    constructor() {
        this.chart = element("chart");
        this.live = element("live-region");
        this.status = element("status-bar");
        this.error = element("error-banner");
        this.menus = element("landmark-menus");
        this.help = element("help-text");
    }
    setChart(svg) {
        this.chart.innerHTML = svg;
    }
    announce(text) {
        this.live.textContent = text;
    }
    setStatus(text) {
        this.status.textContent = text;
    }
    showError(text) {
        this.error.textContent = text;
        this.error.hidden = false;
    }
    clearError() {
        this.error.hidden = true;
        this.error.textContent = "";
    }
    openMenu() {
        const first = this.menus.querySelector("select");
        if (first)
            first.focus();
    }
    showHelp() {
        this.help.hidden = !this.help.hidden;
    }
}
async function refreshMenus(controller) {
    const menusRoot = element("landmark-menus");
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
        for (const entry of menu.entries) {
            const option = document.createElement("option");
            option.value = entry.id;
            option.textContent = entry.label;
            select.appendChild(option);
        }
        select.addEventListener("change", () => {
            if (select.value) {
                void controller.jumpTo(select.value).then(() => {
                    select.value = "";
                    element("chart").focus();
                });
            }
        });
        wrapper.appendChild(select);
        menusRoot.appendChild(wrapper);
    });
}
async function boot() {
    const api = new SessionClient("");
    const host = new DomHost();
    const controller = new ChartController(api, host);
    element("help-text").textContent = HELP_TEXT;
    const picker = element("example-picker");
    const composition = element("composition-picker");
    const verbosity = element("verbosity-picker");
    const { examples } = await api.listExamples();
    for (const entry of examples) {
        const option = document.createElement("option");
        option.value = entry.name;
        option.textContent = entry.title ?? entry.name;
        picker.appendChild(option);
    }
    const load = async () => {
        const config = {
            composition: composition.value,
            verbosity: verbosity.value,
        };
        try {
            await controller.start(picker.value, config);
            await refreshMenus(controller);
            element("chart").focus();
        }
        catch (error) {
            host.showError(`Could not load example: ${error.message}`);
        }
    };
    picker.addEventListener("change", () => void load());
    composition.addEventListener("change", () => void load());
    verbosity.addEventListener("change", () => void load());
    const chart = element("chart");
    chart.addEventListener("keydown", (event) => {
        const consumed = controller.handleKey({
            key: event.key,
            shiftKey: event.shiftKey,
            ctrlKey: event.ctrlKey,
            altKey: event.altKey,
            metaKey: event.metaKey,
            repeat: event.repeat,
        });
        if (consumed)
            event.preventDefault();
    });
    if (examples.length) {
        picker.value = examples[0].name;
        await load();
    }
}
void boot();
