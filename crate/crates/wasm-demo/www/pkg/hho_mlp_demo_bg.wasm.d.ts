/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_hawkhunt_free: (a: number, b: number) => void;
export const __wbg_trainingdemo_free: (a: number, b: number) => void;
export const hawkhunt_field: (a: number, b: number, c: number) => [number, number];
export const hawkhunt_half_width: (a: number) => number;
export const hawkhunt_history: (a: number) => [number, number];
export const hawkhunt_iterations: (a: number) => number;
export const hawkhunt_n_hawks: (a: number) => number;
export const hawkhunt_positions_at: (a: number, b: number) => [number, number];
export const hawkhunt_prey_at: (a: number, b: number) => [number, number];
export const hawkhunt_run: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const levy_walk: (a: number, b: number, c: number) => [number, number];
export const trainingdemo_accuracy: (a: number) => number;
export const trainingdemo_history: (a: number) => [number, number];
export const trainingdemo_labels: (a: number) => [number, number];
export const trainingdemo_points: (a: number) => [number, number];
export const trainingdemo_run: (a: number, b: number, c: number, d: number) => [number, number, number];
export const trainingdemo_surface: (a: number, b: number, c: number) => [number, number];
export const levy_sigma_of: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_start: () => void;
