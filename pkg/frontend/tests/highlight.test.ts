import assert from "node:assert/strict";
import { test } from "node:test";

import { applyHighlights, highlightedRowIds, markRowIds } from "../src/highlight.js";
import { renderChart } from "../src/svg.js";
import type { ChartSpec, Row } from "../src/types.js";

const SPEC: ChartSpec = {
    mark: "point",
    encoding: {
        x: { field: "x", type: "quantitative" },
        y: { field: "y", type: "quantitative" },
    },
};

const ROWS: Row[] = Array.from({ length: 8 }, (_, i) => ({ x: i, y: (i * 3) % 5 }));

test("highlight decoration matches the requested id set exactly", () => {
    const base = renderChart(SPEC, ROWS);
    assert.deepEqual(highlightedRowIds(base), []);
    const decorated = applyHighlights(base, [1, 4, 6]);
    assert.deepEqual(highlightedRowIds(decorated), [1, 4, 6]);
    // base svg unchanged, marks preserved
    assert.deepEqual(markRowIds(decorated), markRowIds(base));
});

test("reapplying from the base replaces, not accumulates", () => {
    const base = renderChart(SPEC, ROWS);
    const first = applyHighlights(base, [0, 1, 2]);
    const second = applyHighlights(base, [7]);
    assert.deepEqual(highlightedRowIds(first), [0, 1, 2]);
    assert.deepEqual(highlightedRowIds(second), [7]);
});

test("empty set clears everything", () => {
    const base = renderChart(SPEC, ROWS);
    assert.deepEqual(highlightedRowIds(applyHighlights(base, [])), []);
});

test("ids not present in the rendering are ignored", () => {
    const base = renderChart(SPEC, ROWS);
    assert.deepEqual(highlightedRowIds(applyHighlights(base, [3, 999])), [3]);
});
