// View state for marking the pending explanation's nodes.
//
// Each node carries a tri-state mark; "unset" forces a deliberate answer.
// Marking a node not-justified auto-marks every ancestor toward the root
// not-justified, mirroring the server's monotonicity rule (a 0 below a 1 is
// rejected there). Submission is enabled only when every node is set and the
// tree is monotone, so the client can never send a tree the server rejects.

import type { BitsDoc, ExplanationDoc } from './api.js';

export type Mark = 'unset' | 'justified' | 'not-justified';

export type MarkState = {
  tree: ExplanationDoc;
  marks: Map<string, Mark>;
};

/** Node addresses are child-index paths from the root, e.g. "0.1". */
export function pathKey(path: number[]): string {
  return path.join('.');
}

export function nodeAt(tree: ExplanationDoc, path: number[]): ExplanationDoc {
  let node = tree;
  for (const i of path) {
    const child = node.premises[i];
    if (child === undefined) {
      throw new Error(`no node at path ${pathKey(path)}`);
    }
    node = child;
  }
  return node;
}

export function allPaths(tree: ExplanationDoc, prefix: number[] = []): number[][] {
  const out: number[][] = [prefix];
  tree.premises.forEach((sub, i) => {
    out.push(...allPaths(sub, [...prefix, i]));
  });
  return out;
}

export function freshMarks(tree: ExplanationDoc): MarkState {
  const marks = new Map<string, Mark>();
  for (const path of allPaths(tree)) {
    marks.set(pathKey(path), 'unset');
  }
  return { tree, marks };
}

export function getMark(state: MarkState, path: number[]): Mark {
  return state.marks.get(pathKey(path)) ?? 'unset';
}

/** Set a mark; a not-justified mark propagates to all ancestors. */
export function setMark(state: MarkState, path: number[], mark: Mark): MarkState {
  const marks = new Map(state.marks);
  marks.set(pathKey(path), mark);
  if (mark === 'not-justified') {
    for (let k = path.length - 1; k >= 0; k--) {
      marks.set(pathKey(path.slice(0, k)), 'not-justified');
    }
  }
  return { tree: state.tree, marks };
}

export function allSet(state: MarkState): boolean {
  return [...state.marks.values()].every((m) => m !== 'unset');
}

/** Monotone: no node marked justified with a premise marked not-justified. */
export function isMonotone(state: MarkState): boolean {
  for (const path of allPaths(state.tree)) {
    const node = nodeAt(state.tree, path);
    if (getMark(state, path) !== 'justified') continue;
    for (let i = 0; i < node.premises.length; i++) {
      if (getMark(state, [...path, i]) === 'not-justified') return false;
    }
  }
  return true;
}

export function canSubmit(state: MarkState): boolean {
  return allSet(state) && isMonotone(state);
}

export function toBits(state: MarkState, path: number[] = []): BitsDoc {
  if (!canSubmit(state)) {
    throw new Error('cannot submit: marks incomplete or non-monotone');
  }
  return bitsUnchecked(state, path);
}

function bitsUnchecked(state: MarkState, path: number[]): BitsDoc {
  const node = nodeAt(state.tree, path);
  return {
    value: getMark(state, path) === 'justified' ? 1 : 0,
    premises: node.premises.map((_, i) => bitsUnchecked(state, [...path, i])),
  };
}

/** Pre-fill marks from a known bits tree (used by scripted sessions). */
export function marksFromBits(tree: ExplanationDoc, bits: BitsDoc): MarkState {
  let state = freshMarks(tree);
  const walk = (b: BitsDoc, path: number[]) => {
    state = setMark(state, path, b.value === 1 ? 'justified' : 'not-justified');
    b.premises.forEach((sub, i) => walk(sub, [...path, i]));
  };
  walk(bits, []);
  return state;
}
