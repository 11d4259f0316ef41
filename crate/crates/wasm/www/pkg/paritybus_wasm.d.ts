/* tslint:disable */
/* eslint-disable */

/**
 * Lowest levels along a sweep, flattened row by row.
 */
export class Spectrum {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Avoided crossings as `(location, gap, energy)` triples.
     */
    readonly crossings: Float64Array;
    /**
     * `energies[i * levels + k]` is level `k` at grid point `i`.
     */
    readonly energies: Float64Array;
    readonly grid: Float64Array;
    readonly levels: number;
    /**
     * Parity `±1` in the same layout as `energies`.
     */
    readonly parities: Int8Array;
}

/**
 * `<σ+₂σ−₂>(t)` from `|0⟩|eg⟩` under the full and effective Hamiltonians.
 */
export class Transfer {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly effective: Float64Array;
    readonly full: Float64Array;
    readonly times: Float64Array;
    readonly two_j_eff: number;
}

/**
 * Bare Rabi spectrum for `g_p ∈ [0, g_max]`.
 */
export function rabi_spectrum(omega_p: number, g_max: number, points: number, levels: number, n_fock: number): Spectrum;

/**
 * Excitation transfer over `periods` transfer times `π/(2J)` for identical qubits.
 */
export function transfer_dynamics(omega_p: number, g_p: number, omega_q: number, g: number, periods: number, points: number, n_fock: number): Transfer;

/**
 * Spectrum of bus plus two qubits versus the gap of qubit 2, or of both
 * qubits together when `identical` is set.
 */
export function two_qubit_spectrum(omega_p: number, g_p: number, g: number, omega_q1: number, identical: boolean, start: number, stop: number, points: number, levels: number, n_fock: number): Spectrum;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_spectrum_free: (a: number, b: number) => void;
    readonly __wbg_transfer_free: (a: number, b: number) => void;
    readonly rabi_spectrum: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly spectrum_crossings: (a: number) => [number, number];
    readonly spectrum_energies: (a: number) => [number, number];
    readonly spectrum_grid: (a: number) => [number, number];
    readonly spectrum_levels: (a: number) => number;
    readonly spectrum_parities: (a: number) => [number, number];
    readonly transfer_dynamics: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
    readonly transfer_effective: (a: number) => [number, number];
    readonly transfer_full: (a: number) => [number, number];
    readonly transfer_times: (a: number) => [number, number];
    readonly transfer_two_j_eff: (a: number) => number;
    readonly two_qubit_spectrum: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number) => [number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
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
