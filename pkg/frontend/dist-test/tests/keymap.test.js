import assert from "node:assert/strict";
import { test } from "node:test";
import { mapKey } from "../src/keymap.js";
test("arrow keys map to structural verbs", () => {
    assert.deepEqual(mapKey({ key: "ArrowUp" }), { kind: "command", verb: "up" });
    assert.deepEqual(mapKey({ key: "ArrowDown" }), { kind: "command", verb: "down" });
    assert.deepEqual(mapKey({ key: "ArrowLeft" }), { kind: "command", verb: "left" });
    assert.deepEqual(mapKey({ key: "ArrowRight" }), { kind: "command", verb: "right" });
});
test("shifted horizontal arrows move laterally", () => {
    assert.deepEqual(mapKey({ key: "ArrowLeft", shiftKey: true }), { kind: "command", verb: "lateralPrev" });
    assert.deepEqual(mapKey({ key: "ArrowRight", shiftKey: true }), { kind: "command", verb: "lateralNext" });
    assert.equal(mapKey({ key: "ArrowUp", shiftKey: true }), null);
});
test("wasd maps to spatial verbs", () => {
    assert.deepEqual(mapKey({ key: "w" }), { kind: "command", verb: "spatialUp" });
    assert.deepEqual(mapKey({ key: "a" }), { kind: "command", verb: "spatialLeft" });
    assert.deepEqual(mapKey({ key: "s" }), { kind: "command", verb: "spatialDown" });
    assert.deepEqual(mapKey({ key: "d" }), { kind: "command", verb: "spatialRight" });
});
test("orientation keys", () => {
    assert.deepEqual(mapKey({ key: "Home" }), { kind: "command", verb: "home" });
    assert.deepEqual(mapKey({ key: "End" }), { kind: "command", verb: "end" });
    assert.deepEqual(mapKey({ key: "Escape" }), { kind: "command", verb: "toRoot" });
    assert.deepEqual(mapKey({ key: "b" }), { kind: "command", verb: "switchBranch" });
    assert.deepEqual(mapKey({ key: "Tab" }), { kind: "menu" });
    assert.deepEqual(mapKey({ key: "?" }), { kind: "help" });
});
test("unknown keys and browser shortcuts pass through", () => {
    assert.equal(mapKey({ key: "x" }), null);
    assert.equal(mapKey({ key: "F5" }), null);
    assert.equal(mapKey({ key: "ArrowDown", ctrlKey: true }), null);
    assert.equal(mapKey({ key: "w", metaKey: true }), null);
});
test("key repeat is suppressed unless enabled", () => {
    assert.equal(mapKey({ key: "ArrowDown", repeat: true }), null);
    assert.deepEqual(mapKey({ key: "ArrowDown", repeat: true }, true), { kind: "command", verb: "down" });
});
