/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_spectrum_free: (a: number, b: number) => void;
export const __wbg_transfer_free: (a: number, b: number) => void;
export const rabi_spectrum: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const spectrum_crossings: (a: number) => [number, number];
export const spectrum_energies: (a: number) => [number, number];
export const spectrum_grid: (a: number) => [number, number];
export const spectrum_levels: (a: number) => number;
export const spectrum_parities: (a: number) => [number, number];
export const transfer_dynamics: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
export const transfer_effective: (a: number) => [number, number];
export const transfer_full: (a: number) => [number, number];
export const transfer_times: (a: number) => [number, number];
export const transfer_two_j_eff: (a: number) => number;
export const two_qubit_spectrum: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
