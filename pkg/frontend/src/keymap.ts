/** The canonical keybinding contract, mapped from keyboard events.
 *
 * Arrows move structurally, Shift+Left/Right laterally, w/a/s/d spatially,
 * Home/End/Escape for orientation, Tab opens the landmark menu, b switches
 * branches. Exactly one action per keypress; repeats are ignored unless
 * enabled.
 */

import type { Verb } from "./types.js";

export interface KeyStroke {
    key: string;
    shiftKey?: boolean;
    ctrlKey?: boolean;
    altKey?: boolean;
    metaKey?: boolean;
    repeat?: boolean;
}

export type KeyAction = { kind: "command"; verb: Verb } | { kind: "menu" } | { kind: "help" };

const PLAIN_KEYS: Record<string, Verb> = {
    ArrowUp: "up",
    ArrowDown: "down",
    ArrowLeft: "left",
    ArrowRight: "right",
    Home: "home",
    End: "end",
    Escape: "toRoot",
    w: "spatialUp",
    a: "spatialLeft",
    s: "spatialDown",
    d: "spatialRight",
    b: "switchBranch",
};

const SHIFT_KEYS: Record<string, Verb> = {
    ArrowLeft: "lateralPrev",
    ArrowRight: "lateralNext",
};

export function mapKey(stroke: KeyStroke, allowRepeat = false): KeyAction | null {
    if (stroke.repeat && !allowRepeat) return null;
    if (stroke.ctrlKey || stroke.altKey || stroke.metaKey) return null;
    if (stroke.key === "Tab") return { kind: "menu" };
    if (stroke.key === "?") return { kind: "help" };
    if (stroke.shiftKey) {
        const verb = SHIFT_KEYS[stroke.key];
        return verb ? { kind: "command", verb } : null;
    }
    const verb = PLAIN_KEYS[stroke.key];
    return verb ? { kind: "command", verb } : null;
}
