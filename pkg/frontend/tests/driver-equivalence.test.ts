// Headless scripted sessions against a real server process: answering with
// the simulated explainee's bits must reproduce the engine transcript byte
// for byte on every fixture.

import { spawn, type ChildProcess } from 'node:child_process';
import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { SessionClient, type BitsDoc } from '../src/api.js';
import { canSubmit, marksFromBits, toBits } from '../src/state.js';

type Fixture = {
  name: string;
  model: unknown;
  world: string;
  claim: string;
  rounds: BitsDoc[];
  status: string;
  transcript: string;
};

const here = dirname(fileURLToPath(import.meta.url));
const fixtures: Fixture[] = JSON.parse(readFileSync(join(here, 'fixtures.json'), 'utf8'));

const port = 8700 + Math.floor(Math.random() * 200);
const baseUrl = `http://127.0.0.1:${port}`;
let server: ChildProcess;

async function waitForServer(): Promise<void> {
  for (let i = 0; i < 100; i++) {
    try {
      const res = await fetch(`${baseUrl}/health`);
      if (res.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 100));
  }
  throw new Error('server did not come up');
}

beforeAll(async () => {
  server = spawn('python3', ['-m', 'xconv.cli', 'serve', '--port', String(port)], {
    cwd: join(here, '..', '..'),
    stdio: 'ignore',
  });
  await waitForServer();
}, 30000);

afterAll(() => {
  server?.kill();
});

describe('driver equivalence', () => {
  for (const fixture of fixtures) {
    it(`reproduces the engine transcript for ${fixture.name}`, async () => {
      const client = new SessionClient(baseUrl);
      let state = await client.createSession({
        model: fixture.model,
        world: fixture.world,
        claim: fixture.claim,
      });
      for (const bits of fixture.rounds) {
        expect(state.pending).not.toBeNull();
        // run the bits through the UI mark machinery, as a scripted user would
        const marks = marksFromBits(state.pending!, bits);
        expect(canSubmit(marks)).toBe(true);
        state = await client.postFeedback(state.id, state.round, toBits(marks));
      }
      expect(state.status).toBe(fixture.status);
      const transcript = await client.getTranscript(state.id);
      expect(transcript).toBe(fixture.transcript);
    });
  }
});
