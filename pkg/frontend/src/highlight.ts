/** Highlight decoration over the rendered SVG.
 *
 * The renderer emits every datum mark with the exact attribute prefix
 * `class="mark" data-row-id="N"`, so highlighting is a pure string
 * transform over the base SVG: stateless, and trivially invertible by
 * re-applying with a different set.
 */

const MARK_PATTERN = /class="mark" data-row-id="(\d+)"/g;
const HIGHLIGHTED_PATTERN = /class="mark highlighted" data-highlighted="true" data-row-id="(\d+)"/g;

export function applyHighlights(baseSvg: string, rowIds: Iterable<number>): string {
    const wanted = new Set<number>();
    for (const id of rowIds) wanted.add(id);
    return baseSvg.replace(MARK_PATTERN, (whole, id: string) =>
        wanted.has(Number(id)) ? `class="mark highlighted" data-highlighted="true" data-row-id="${id}"` : whole,
    );
}

/** The row ids currently decorated as highlighted (for tests and debugging). */
export function highlightedRowIds(svg: string): number[] {
    const out: number[] = [];
    for (const match of svg.matchAll(HIGHLIGHTED_PATTERN)) {
        out.push(Number(match[1]));
    }
    return out.sort((a, b) => a - b);
}

/** All datum row ids present in the rendering, highlighted or not. */
export function markRowIds(svg: string): number[] {
    const out: number[] = [];
    for (const match of svg.matchAll(/data-row-id="(\d+)"/g)) {
        out.push(Number(match[1]));
    }
    return out.sort((a, b) => a - b);
}
