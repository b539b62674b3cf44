/** Pure SVG rendering of chart specs: scatter, line, bar, area, and trellis
 * layouts, with axes, legend, and shaded annotation regions. Every datum
 * mark is emitted as `class="mark" data-row-id="N"` so the highlighter can
 * address it; keep that attribute shape in sync with highlight.ts.
 */
export class RenderError extends Error {
}
/** Color names match the engine's spoken legend palette. */
export const PALETTE = ["blue", "orange", "green", "red", "purple", "brown", "pink", "gray", "olive", "cyan"];
const MARKS = new Set(["point", "line", "bar", "area"]);
function escapeText(text) {
    return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}
function formatNumber(value) {
    if (Number.isInteger(value))
        return String(value);
    const text = value.toPrecision(4);
    return String(Number(text));
}
function categoriesOf(rows, field, explicit) {
    const seen = [];
    for (const row of rows) {
        const v = row[field];
        if (v === null || v === undefined)
            continue;
        const label = typeof v === "number" ? formatNumber(v) : String(v);
        if (!seen.includes(label))
            seen.push(label);
    }
    if (!explicit || explicit.length === 0)
        return seen;
    const ordered = explicit.filter((c) => seen.includes(c));
    for (const c of seen)
        if (!ordered.includes(c))
            ordered.push(c);
    return ordered;
}
function categoryLabel(value) {
    return typeof value === "number" ? formatNumber(value) : String(value);
}
function niceStep(raw) {
    const exponent = Math.floor(Math.log10(raw));
    const base = Math.pow(10, exponent);
    for (const m of [1, 2, 5, 10]) {
        if (m * base >= raw)
            return m * base;
    }
    return 10 * base;
}
function linearScale(lo, hi, rangeLo, rangeHi) {
    if (lo === hi) {
        lo -= 1;
        hi += 1;
    }
    const span = hi - lo;
    const position = (value) => rangeLo + ((value - lo) / span) * (rangeHi - rangeLo);
    const step = niceStep(span / 5);
    const ticks = [];
    for (let t = Math.ceil(lo / step) * step; t <= hi + 1e-9; t += step) {
        ticks.push({ at: position(t), label: formatNumber(t) });
    }
    return { kind: "linear", position, ticks, bandWidth: 0 };
}
function bandScale(categories, rangeLo, rangeHi) {
    const n = Math.max(categories.length, 1);
    const band = (rangeHi - rangeLo) / n;
    const index = new Map(categories.map((c, i) => [c, i]));
    const position = (value) => {
        const i = index.get(categoryLabel(value)) ?? 0;
        return rangeLo + band * i + band / 2;
    };
    const ticks = categories.map((c, i) => ({ at: rangeLo + band * i + band / 2, label: c }));
    return { kind: "band", position, ticks, bandWidth: band };
}
function numericExtent(rows, field) {
    let lo = Infinity;
    let hi = -Infinity;
    for (const row of rows) {
        const v = row[field];
        if (typeof v === "number") {
            if (v < lo)
                lo = v;
            if (v > hi)
                hi = v;
        }
    }
    if (lo === Infinity)
        return [0, 1];
    return [lo, hi];
}
function isIntervalScaled(enc) {
    return enc.type === "quantitative" || enc.type === "temporal";
}
export function renderChart(spec, rows, options = {}) {
    if (!MARKS.has(spec.mark)) {
        throw new RenderError(`unsupported mark: ${spec.mark}`);
    }
    const width = options.width ?? 720;
    const height = options.height ?? 440;
    const xEnc = spec.encoding.x;
    const yEnc = spec.encoding.y;
    const colorEnc = spec.encoding.color;
    const colorCategories = colorEnc ? categoriesOf(rows, colorEnc.field) : [];
    const colorOf = (row) => {
        if (!colorEnc)
            return "steelblue";
        const v = row[colorEnc.field];
        if (v === null || v === undefined)
            return "black";
        const i = colorCategories.indexOf(categoryLabel(v));
        return PALETTE[((i % PALETTE.length) + PALETTE.length) % PALETTE.length];
    };
    const legendWidth = colorEnc ? 150 : 20;
    const margin = { top: spec.title ? 42 : 20, right: legendWidth, bottom: 48, left: 62 };
    const plot = {
        x: margin.left,
        y: margin.top,
        width: width - margin.left - margin.right,
        height: height - margin.top - margin.bottom,
    };
    const parts = [];
    parts.push(`<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" ` +
        `width="${width}" height="${height}" role="img" aria-hidden="true">`);
    if (spec.title) {
        parts.push(`<text class="chart-title" x="${margin.left}" y="24">${escapeText(spec.title)}</text>`);
    }
    const facetField = spec.facet?.field;
    if (facetField) {
        const facets = categoriesOf(rows, facetField, spec.facet?.order);
        const nCols = Math.min(3, Math.max(1, facets.length));
        const nRows = Math.ceil(facets.length / nCols);
        const gap = 34;
        const panelWidth = (plot.width - gap * (nCols - 1)) / nCols;
        const panelHeight = (plot.height - gap * (nRows - 1)) / nRows;
        facets.forEach((facet, i) => {
            const col = i % nCols;
            const rowIndex = Math.floor(i / nCols);
            const frame = {
                x: plot.x + col * (panelWidth + gap),
                y: plot.y + rowIndex * (panelHeight + gap),
                width: panelWidth,
                height: panelHeight,
            };
            const subset = rows
                .map((row, rowId) => ({ row, rowId }))
                .filter(({ row }) => row[facetField] !== null && categoryLabel(row[facetField]) === facet);
            parts.push(`<g class="facet" data-facet="${escapeText(facet)}">`);
            parts.push(`<text class="facet-title" x="${frame.x}" y="${frame.y - 6}">${escapeText(facet)}</text>`);
            parts.push(renderPanel(spec, rows, subset, frame, colorOf, i === 0));
            parts.push("</g>");
        });
    }
    else {
        const indexed = rows.map((row, rowId) => ({ row, rowId }));
        parts.push(renderPanel(spec, rows, indexed, plot, colorOf, true));
    }
    if (colorEnc) {
        const legendX = width - legendWidth + 14;
        parts.push(`<g class="legend"><text class="legend-title" x="${legendX}" y="${margin.top}">` +
            `${escapeText(colorEnc.field)}</text>`);
        colorCategories.forEach((category, i) => {
            const y = margin.top + 18 + i * 18;
            const color = PALETTE[i % PALETTE.length];
            parts.push(`<rect class="swatch" x="${legendX}" y="${y - 9}" width="11" height="11" fill="${color}"/>`);
            parts.push(`<text class="legend-entry" x="${legendX + 16}" y="${y}">${escapeText(category)}</text>`);
        });
        parts.push("</g>");
    }
    parts.push("</svg>");
    return parts.join("\n");
    function renderPanel(chartSpec, allRows, subset, frame, color, showAxisTitles) {
        const out = [];
        const zeroBase = chartSpec.mark === "bar" || chartSpec.mark === "area";
        const xScale = makeScale(xEnc, allRows, frame.x, frame.x + frame.width, false);
        const yScale = makeScale(yEnc, allRows, frame.y + frame.height, frame.y, zeroBase);
        out.push(`<g class="panel">`);
        out.push(`<rect class="panel-bg" x="${frame.x}" y="${frame.y}" width="${frame.width}" height="${frame.height}"/>`);
        out.push(renderAnnotations(chartSpec.annotations ?? [], frame, xScale, yScale));
        out.push(renderAxes(frame, xScale, yScale, showAxisTitles));
        const complete = subset.filter(({ row }) => channelPresent(row, xEnc) && channelPresent(row, yEnc));
        if ((chartSpec.mark === "line" || chartSpec.mark === "area") && xEnc && yEnc) {
            const seriesKeys = colorEnc
                ? Array.from(new Set(complete.map(({ row }) => categoryLabel(row[colorEnc.field]))))
                : [""];
            for (const key of seriesKeys) {
                const series = colorEnc
                    ? complete.filter(({ row }) => categoryLabel(row[colorEnc.field]) === key)
                    : complete;
                if (!series.length)
                    continue;
                const sorted = [...series].sort((a, b) => a.row[xEnc.field] - b.row[xEnc.field] || a.rowId - b.rowId);
                const points = sorted
                    .map(({ row }) => `${round(xScale.position(row[xEnc.field]))},${round(yScale.position(row[yEnc.field]))}`)
                    .join(" ");
                const stroke = colorEnc ? color(sorted[0].row) : "steelblue";
                if (chartSpec.mark === "area") {
                    const baseline = yScale.position(zeroFloor(allRows, yEnc));
                    const first = sorted[0];
                    const last = sorted[sorted.length - 1];
                    const fillPoints = `${round(xScale.position(first.row[xEnc.field]))},${round(baseline)} ${points} ` +
                        `${round(xScale.position(last.row[xEnc.field]))},${round(baseline)}`;
                    out.push(`<polygon class="area" points="${fillPoints}" fill="${stroke}" fill-opacity="0.25"/>`);
                }
                out.push(`<polyline class="series" points="${points}" fill="none" stroke="${stroke}"/>`);
            }
        }
        for (const { row, rowId } of complete) {
            const cx = round(xScale.position(row[xEnc.field]));
            const cy = round(yScale.position(row[yEnc.field]));
            const fill = color(row);
            if (chartSpec.mark === "bar") {
                const baseline = yScale.position(zeroFloor(allRows, yEnc));
                const barWidth = xScale.kind === "band" ? Math.max(2, xScale.bandWidth * 0.8) : 3;
                const top = Math.min(cy, baseline);
                const barHeight = Math.max(1, Math.abs(baseline - cy));
                out.push(`<rect class="mark" data-row-id="${rowId}" x="${round(cx - barWidth / 2)}" y="${round(top)}" ` +
                    `width="${round(barWidth)}" height="${round(barHeight)}" fill="${fill}" fill-opacity="0.35"/>`);
            }
            else {
                const radius = chartSpec.mark === "point" ? 3.5 : 2.5;
                out.push(`<circle class="mark" data-row-id="${rowId}" cx="${cx}" cy="${cy}" r="${radius}" fill="${fill}"/>`);
            }
        }
        out.push("</g>");
        return out.join("\n");
    }
    function makeScale(enc, allRows, rangeLo, rangeHi, includeZero) {
        if (!enc) {
            return linearScale(0, 1, rangeLo, rangeHi);
        }
        if (isIntervalScaled(enc)) {
            let [lo, hi] = numericExtent(allRows, enc.field);
            if (includeZero)
                lo = Math.min(lo, 0);
            return linearScale(lo, hi, rangeLo, rangeHi);
        }
        return bandScale(categoriesOf(allRows, enc.field), rangeLo, rangeHi);
    }
    function zeroFloor(allRows, enc) {
        const [lo] = numericExtent(allRows, enc.field);
        return Math.min(0, lo);
    }
    function renderAxes(frame, xScale, yScale, withTitles) {
        const out = [];
        const bottom = frame.y + frame.height;
        out.push(`<g class="axes">`);
        out.push(`<line class="axis" x1="${frame.x}" y1="${bottom}" x2="${frame.x + frame.width}" y2="${bottom}"/>`);
        out.push(`<line class="axis" x1="${frame.x}" y1="${frame.y}" x2="${frame.x}" y2="${bottom}"/>`);
        for (const tick of xScale.ticks) {
            if (tick.at < frame.x - 1 || tick.at > frame.x + frame.width + 1)
                continue;
            out.push(`<line class="tick" x1="${round(tick.at)}" y1="${bottom}" x2="${round(tick.at)}" y2="${bottom + 5}"/>`);
            out.push(`<text class="tick-label x" x="${round(tick.at)}" y="${bottom + 17}" text-anchor="middle">` +
                `${escapeText(tick.label)}</text>`);
        }
        for (const tick of yScale.ticks) {
            if (tick.at < frame.y - 1 || tick.at > bottom + 1)
                continue;
            out.push(`<line class="tick" x1="${frame.x - 5}" y1="${round(tick.at)}" x2="${frame.x}" y2="${round(tick.at)}"/>`);
            out.push(`<text class="tick-label y" x="${frame.x - 8}" y="${round(tick.at) + 4}" text-anchor="end">` +
                `${escapeText(tick.label)}</text>`);
        }
        if (withTitles) {
            if (xEnc) {
                out.push(`<text class="axis-title" x="${frame.x + frame.width / 2}" y="${bottom + 36}" ` +
                    `text-anchor="middle">${escapeText(xEnc.field)}</text>`);
            }
            if (yEnc) {
                const cy = frame.y + frame.height / 2;
                out.push(`<text class="axis-title" transform="rotate(-90 ${frame.x - 44} ${cy})" x="${frame.x - 44}" ` +
                    `y="${cy}" text-anchor="middle">${escapeText(yEnc.field)}</text>`);
            }
        }
        out.push("</g>");
        return out.join("\n");
    }
    function renderAnnotations(annotations, frame, xScale, yScale) {
        if (!annotations.length)
            return "";
        const out = [`<g class="annotations">`];
        annotations.forEach((annotation, i) => {
            const [lo, hi] = annotation.range.map((bound) => typeof bound === "number" ? bound : Date.parse(bound) / 86400000);
            if (annotation.channel === "x") {
                const x0 = clamp(xScale.position(lo), frame.x, frame.x + frame.width);
                const x1 = clamp(xScale.position(hi), frame.x, frame.x + frame.width);
                out.push(`<rect class="annotation-region" data-annotation="${i}" x="${round(x0)}" y="${frame.y}" ` +
                    `width="${round(Math.max(1, x1 - x0))}" height="${frame.height}"/>`);
                out.push(`<text class="annotation-label" x="${round(x0 + 4)}" y="${frame.y + 14}">` +
                    `${escapeText(annotation.label)}</text>`);
            }
            else {
                const y0 = clamp(yScale.position(hi), frame.y, frame.y + frame.height);
                const y1 = clamp(yScale.position(lo), frame.y, frame.y + frame.height);
                out.push(`<rect class="annotation-region" data-annotation="${i}" x="${frame.x}" y="${round(y0)}" ` +
                    `width="${frame.width}" height="${round(Math.max(1, y1 - y0))}"/>`);
                out.push(`<text class="annotation-label" x="${frame.x + 4}" y="${round(y0 + 14)}">` +
                    `${escapeText(annotation.label)}</text>`);
            }
        });
        out.push("</g>");
        return out.join("\n");
    }
}
function channelPresent(row, enc) {
    if (!enc)
        return true;
    const v = row[enc.field];
    return v !== null && v !== undefined;
}
function clamp(value, lo, hi) {
    return Math.min(hi, Math.max(lo, value));
}
function round(value) {
    return Math.round(value * 100) / 100;
}
