// HTML rendering for explanation trees and the history panel.
//
// Pure string builders so they are testable without a DOM; main.ts wires
// events through delegation on data attributes.

import type { BitsDoc, ExplanationDoc, HistoryEntry } from './api.js';
import { getMark, pathKey, type MarkState } from './state.js';

export const COLLAPSE_DEPTH = 6;

function escapeHtml(s: string): string {
  return s
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

function nodeLabel(node: ExplanationDoc): string {
  const kind = node.premises.length === 0 ? 'hypothesis' : 'derived';
  const premises =
    node.premises.length > 0
      ? `<span class="premises">from ${node.premises
          .map((p) => escapeHtml(p.claim))
          .join(', ')}</span>`
      : '';
  return `<span class="formula">${escapeHtml(node.claim)}</span> <span class="kind">${kind}</span> ${premises}`;
}

/**
 * Interactive tree for the pending explanation. Subtrees below
 * COLLAPSE_DEPTH render as a collapsed summary that expands on click.
 */
export function renderPending(
  state: MarkState,
  expanded: Set<string> = new Set(),
): string {
  const renderNode = (node: ExplanationDoc, path: number[], depth: number): string => {
    const key = pathKey(path);
    if (depth >= COLLAPSE_DEPTH && node.premises.length > 0 && !expanded.has(key)) {
      return `<li class="node collapsed" data-path="${key}">
        ${nodeLabel(node)}
        <button data-action="expand" data-path="${key}">show ${countNodes(node) - 1} more</button>
      </li>`;
    }
    const mark = getMark(state, path);
    const children =
      node.premises.length > 0
        ? `<ul>${node.premises
            .map((sub, i) => renderNode(sub, [...path, i], depth + 1))
            .join('')}</ul>`
        : '';
    return `<li class="node mark-${mark}" data-path="${key}">
      ${nodeLabel(node)}
      <span class="marker">
        <button data-action="mark-yes" data-path="${key}" ${
          mark === 'justified' ? 'class="active"' : ''
        }>justified</button>
        <button data-action="mark-no" data-path="${key}" ${
          mark === 'not-justified' ? 'class="active"' : ''
        }>not justified</button>
      </span>
      ${children}
    </li>`;
  };
  return `<ul class="explanation">${renderNode(state.tree, [], 0)}</ul>`;
}

export function countNodes(node: ExplanationDoc): number {
  return 1 + node.premises.reduce((n, sub) => n + countNodes(sub), 0);
}

/** Grayed-out prior explanations with their submitted bits. */
export function renderHistory(history: HistoryEntry[]): string {
  if (history.length === 0) {
    return '<p class="empty">No rounds yet.</p>';
  }
  const renderPair = (node: ExplanationDoc, bits: BitsDoc): string => {
    const children =
      node.premises.length > 0
        ? `<ul>${node.premises
            .map((sub, i) => renderPair(sub, bits.premises[i]!))
            .join('')}</ul>`
        : '';
    return `<li class="node bit-${bits.value}">${nodeLabel(node)} <span class="bit">${bits.value}</span>${children}</li>`;
  };
  return history
    .map(
      (entry, i) =>
        `<section class="round"><h3>Round ${i + 1}</h3><ul class="explanation past">${renderPair(
          entry.explanation,
          entry.feedback,
        )}</ul></section>`,
    )
    .join('');
}

export function renderBanner(status: string | null, finalTerm: string | null): string {
  if (status === null) return '';
  if (status === 'JustifiedByExplainee') {
    return `<div class="banner success">Claim justified${
      finalTerm ? ` by <code>${escapeHtml(finalTerm)}</code>` : ''
    }.</div>`;
  }
  const text: Record<string, string> = {
    ExplainerExhausted: 'The explainer has no further explanations to offer.',
    BoundsReached: 'The round limit was reached without a justification.',
    UntruthfulFeedbackDetected: 'The feedback contradicts the facts; conversation ended.',
  };
  return `<div class="banner failure">${text[status] ?? escapeHtml(status)}</div>`;
}
