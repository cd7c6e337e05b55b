/* tslint:disable */
/* eslint-disable */

/**
 * A recorded optimization run on a 2-D benchmark: hawk positions and the
 * incumbent prey after every evaluation sweep.
 */
export class HawkHunt {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Objective sampled on a width×height grid over the domain, row-major
     * from the top; values normalized to [0, 1] for direct color mapping.
     */
    field(width: number, height: number): Float64Array;
    half_width(): number;
    history(): Float64Array;
    iterations(): number;
    n_hawks(): number;
    /**
     * Hawk coordinates at one iteration, flattened (x0, y0, x1, y1, ...).
     */
    positions_at(iteration: number): Float64Array;
    /**
     * Prey coordinates at one iteration (x, y).
     */
    prey_at(iteration: number): Float64Array;
    /**
     * Run the optimizer and record the full trace.
     */
    static run(_function: string, hawks: number, iterations: number, seed: number): HawkHunt;
}

/**
 * A trained detector on the two-feature separable fixture, with the data
 * points and the decision surface for drawing.
 */
export class TrainingDemo {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    accuracy(): number;
    history(): Float64Array;
    labels(): Uint8Array;
    /**
     * Raw (x, y) pairs of the fixture in the unit square.
     */
    points(): Float64Array;
    /**
     * Generate the fixture, train with the given budget, and keep what the
     * page needs for rendering.
     */
    static run(rows: number, hawks: number, iterations: number, seed: number): TrainingDemo;
    /**
     * Network output over a width×height grid of the unit square,
     * row-major from the top.
     */
    surface(width: number, height: number): Float64Array;
}

/**
 * Mantegna scale factor for the current exponent, for display.
 */
export function levy_sigma_of(beta: number): number;

/**
 * Cumulative 2-D Lévy walk: `steps + 1` points flattened as (x, y) pairs,
 * starting at the origin. Steps are drawn exactly like the optimizer's
 * rapid-dive perturbations.
 */
export function levy_walk(beta: number, steps: number, seed: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_hawkhunt_free: (a: number, b: number) => void;
    readonly __wbg_trainingdemo_free: (a: number, b: number) => void;
    readonly hawkhunt_field: (a: number, b: number, c: number) => [number, number];
    readonly hawkhunt_half_width: (a: number) => number;
    readonly hawkhunt_history: (a: number) => [number, number];
    readonly hawkhunt_iterations: (a: number) => number;
    readonly hawkhunt_n_hawks: (a: number) => number;
    readonly hawkhunt_positions_at: (a: number, b: number) => [number, number];
    readonly hawkhunt_prey_at: (a: number, b: number) => [number, number];
    readonly hawkhunt_run: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly levy_walk: (a: number, b: number, c: number) => [number, number];
    readonly trainingdemo_accuracy: (a: number) => number;
    readonly trainingdemo_history: (a: number) => [number, number];
    readonly trainingdemo_labels: (a: number) => [number, number];
    readonly trainingdemo_points: (a: number) => [number, number];
    readonly trainingdemo_run: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly trainingdemo_surface: (a: number, b: number, c: number) => [number, number];
    readonly levy_sigma_of: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
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
