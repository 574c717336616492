/* tslint:disable */
/* eslint-disable */

/**
 * QCurve label followed by the critical time, e.g. `"O 12.5"` or `"I -"`.
 */
export function classify_curve(times: Float64Array, values: Float64Array, epsilon: number): string;

/**
 * Rows of `t, s_total, s_closed_form` for a free coherent state.
 */
export function coherent_curve(model: string, sigma2: number, mass: number, tmax: number, steps: number): Float64Array;

/**
 * Rows of `t, s_total, s_sum_singles, overlap` for a head-on collision of
 * two packets starting at `±c` on a reduced grid.
 */
export function collision_curve(p1: number, hbar_over_m: number, c: number, fermion: boolean, points: number, steps: number): Float64Array;

/**
 * Rows of `t, p1, p2, s_total` for a two-level system in the
 * harmonic-oscillator basis.
 */
export function two_level_curve(omega11: number, omega22: number, w12: number, tmax: number, steps: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly classify_curve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly coherent_curve: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly collision_curve: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly two_level_curve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
