// Page controller: one session per page, all state derived from API
// snapshots, optimistic round-number concurrency (a stale submit prompts a
// refresh instead of corrupting the session).

import { ApiError, SessionClient, type SessionState } from './api.js';
import { renderBanner, renderHistory, renderPending } from './render.js';
import { canSubmit, freshMarks, setMark, toBits, type MarkState } from './state.js';

const apiBase =
  new URLSearchParams(location.search).get('api') ?? 'http://127.0.0.1:8000';
const client = new SessionClient(apiBase);

let session: SessionState | null = null;
let marks: MarkState | null = null;
const expanded = new Set<string>();

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
}

function showError(message: string): void {
  el('error').textContent = message;
}

function render(): void {
  el('error').textContent = '';
  if (!session) return;
  el('question').textContent = `Why ${session.claim}?`;
  el('banner').innerHTML = renderBanner(session.status, session.final_term);
  el('history').innerHTML = renderHistory(session.history);
  if (session.pending && marks) {
    el('pending').innerHTML = renderPending(marks, expanded);
    (el('submit') as HTMLButtonElement).disabled = !canSubmit(marks);
    el('pending-panel').hidden = false;
  } else {
    el('pending').innerHTML = '';
    el('pending-panel').hidden = true;
  }
}

function adopt(state: SessionState): void {
  session = state;
  marks = state.pending ? freshMarks(state.pending) : null;
  expanded.clear();
  render();
}

async function start(): Promise<void> {
  const world = (el('world') as HTMLInputElement).value.trim();
  const claim = (el('claim') as HTMLInputElement).value.trim();
  try {
    adopt(await client.createSession({ world, claim }));
  } catch (err) {
    showError(err instanceof Error ? err.message : String(err));
  }
}

async function submit(): Promise<void> {
  if (!session || !marks || !canSubmit(marks)) return;
  try {
    adopt(await client.postFeedback(session.id, session.round, toBits(marks)));
  } catch (err) {
    if (err instanceof ApiError && err.isStaleRound) {
      showError('Round was out of date; refreshed the session.');
      adopt(await client.getState(session.id));
      return;
    }
    showError(err instanceof Error ? err.message : String(err));
  }
}

el('pending').addEventListener('click', (event) => {
  const target = event.target as HTMLElement;
  const action = target.dataset.action;
  const key = target.dataset.path;
  if (!action || key === undefined || !marks) return;
  const path = key === '' ? [] : key.split('.').map(Number);
  if (action === 'expand') {
    expanded.add(key);
  } else if (action === 'mark-yes') {
    marks = setMark(marks, path, 'justified');
  } else if (action === 'mark-no') {
    marks = setMark(marks, path, 'not-justified');
  }
  render();
});

el('start').addEventListener('click', () => void start());
el('submit').addEventListener('click', () => void submit());
