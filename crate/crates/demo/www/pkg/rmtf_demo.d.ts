/* tslint:disable */
/* eslint-disable */

/**
 * Failure bound for H with `rows` rows and `cols` columns.
 */
export function failureBound(q: number, m: number, rows: number, cols: number, w: number, t: number, samples: number): string;

/**
 * Generates keys, evaluates on a sampled input and inverts, all from `seed`.
 */
export function roundtrip(q: number, m: number, n: number, l: number, k: number, w: number, t: number, samples: number, seed: number): string;

/**
 * Constraint report and sizes for a full parameter set.
 */
export function validateParams(q: number, m: number, n: number, l: number, k: number, w: number, t: number, samples: number, lambda: number, statistical: boolean): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly failureBound: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number];
    readonly roundtrip: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number];
    readonly validateParams: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
