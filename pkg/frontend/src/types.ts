/** Wire types for the vizcursor session service protocol. */

export type Verb =
    | "up"
    | "down"
    | "left"
    | "right"
    | "lateralPrev"
    | "lateralNext"
    | "spatialUp"
    | "spatialDown"
    | "spatialLeft"
    | "spatialRight"
    | "home"
    | "end"
    | "jump"
    | "switchBranch"
    | "toRoot";

export type Row = Record<string, number | string | null>;

export interface EncodingDef {
    field: string;
    type: "quantitative" | "nominal" | "ordinal" | "temporal";
    bin?: boolean | { maxbins: number };
    aggregate?: string;
}

export interface AnnotationDef {
    label: string;
    channel: "x" | "y";
    range: [number | string, number | string];
    note?: string;
}

export interface ChartSpec {
    mark: string;
    title?: string;
    description?: string;
    encoding: { x?: EncodingDef; y?: EncodingDef; color?: EncodingDef };
    facet?: { field: string; type: string; order?: string[] };
    annotations?: AnnotationDef[];
}

export interface DumpNode {
    id: string;
    kind: string;
    role: string;
    label: string;
    parentId: string | null;
    childIds: string[];
    spatialCoord: [number, number] | null;
    granularity: string;
    rowIds: number[];
}

export interface StructureDump {
    form: string;
    variant: string;
    rootId: string;
    branches: Record<string, string>;
    nodes: DumpNode[];
}

export interface CreateSessionResponse {
    sessionId: string;
    summaryUtterance: string;
    structureDump: StructureDump;
}

export interface CommandResponse {
    status: "moved" | "boundary" | "invalid";
    cursorId: string;
    cursorPath: string[];
    utterance: string;
    highlightRowIds: number[];
    levelChanged: boolean;
    clamped: boolean;
    invalidCode: string | null;
}

export interface Landmark {
    id: string;
    label: string;
    kind: string;
}

export interface CorpusEntry {
    name: string;
    title?: string;
    variant: string;
    drillOrders?: string[][];
    binaryLeafSize?: number;
}

export interface CorpusExample extends CorpusEntry {
    spec: ChartSpec;
    data: Row[];
}

export interface DescriptionConfigPayload {
    composition?: "contextFirst" | "dataFirst";
    verbosity?: "high" | "medium" | "low";
    suppressRepeatedLevel?: boolean;
    numberFormat?: number;
}
