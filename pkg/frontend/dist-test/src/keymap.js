/** The canonical keybinding contract, mapped from keyboard events.
 *
 * Arrows move structurally, Shift+Left/Right laterally, w/a/s/d spatially,
 * Home/End/Escape for orientation, Tab opens the landmark menu, b switches
 * branches. Exactly one action per keypress; repeats are ignored unless
 * enabled.
 */
const PLAIN_KEYS = {
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
const SHIFT_KEYS = {
    ArrowLeft: "lateralPrev",
    ArrowRight: "lateralNext",
};
export function mapKey(stroke, allowRepeat = false) {
    if (stroke.repeat && !allowRepeat)
        return null;
    if (stroke.ctrlKey || stroke.altKey || stroke.metaKey)
        return null;
    if (stroke.key === "Tab")
        return { kind: "menu" };
    if (stroke.key === "?")
        return { kind: "help" };
    if (stroke.shiftKey) {
        const verb = SHIFT_KEYS[stroke.key];
        return verb ? { kind: "command", verb } : null;
    }
    const verb = PLAIN_KEYS[stroke.key];
    return verb ? { kind: "command", verb } : null;
}
