/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const failureBound: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number];
export const roundtrip: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number];
export const validateParams: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
