// Mock API backed by recorded service responses (test/fixtures/*), so the
// contract suite exercises the exact wire format the real service emits.

import { readFileSync, readdirSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

import { ApiError, type FetchJson } from '../src/api.js';

const FIXTURE_DIR = join(dirname(fileURLToPath(import.meta.url)), 'fixtures');

const ROUTE_OF_FIXTURE: Record<string, string> = {
  'users.json': '/api/users',
  'u2_bean.json': '/api/users/u2/plot/bean',
  'u2_bean_unfold0.json': '/api/users/u2/plot/bean?unfold=0',
  'u2_transitional_pie.json': '/api/users/u2/plot/transitional_pie',
  'u2_instrument.json': '/api/users/u2/plot/instrument',
  'u2_calendar.json': '/api/users/u2/plot/calendar',
  'u2_calendar_expand0.json': '/api/users/u2/plot/calendar?expand=0',
  'u3_bean.json': '/api/users/u3/plot/bean',
  'u3_calendar.json': '/api/users/u3/plot/calendar',
  'u3_calendar_expand0.json': '/api/users/u3/plot/calendar?expand=0',
  'u3_rec_single_a.json': '/api/users/u3/recommend?mode=single_track&k=2&seed=a',
  'u2_rec_single_a.json': '/api/users/u2/recommend?mode=single_track&k=2&seed=a',
  'u2_rec_general.json': '/api/users/u2/recommend?mode=general&k=2',
  'u2_rec_slot0.json': '/api/users/u2/recommend?mode=time_slot&k=2&slot=0',
};

export function loadFixture(name: string): unknown {
  return JSON.parse(readFileSync(join(FIXTURE_DIR, name), 'utf-8'));
}

export interface MockOptions {
  overrides?: Record<string, unknown>;
  /** per-URL artificial latency in ms (for cancellation tests) */
  delays?: Record<string, number>;
  log?: string[];
}

export function mockServer(options: MockOptions = {}): FetchJson {
  const routes = new Map<string, unknown>();
  for (const name of readdirSync(FIXTURE_DIR)) {
    const route = ROUTE_OF_FIXTURE[name];
    if (route) routes.set(route, loadFixture(name));
  }
  for (const [url, body] of Object.entries(options.overrides ?? {})) {
    if (body === undefined) {
      routes.delete(url); // simulate a missing/failing route
    } else {
      routes.set(url, body);
    }
  }
  return async (url: string) => {
    options.log?.push(url);
    const delay = options.delays?.[url];
    if (delay) await new Promise((resolve) => setTimeout(resolve, delay));
    if (!routes.has(url)) {
      throw new ApiError(url, 'HTTP 404: no fixture for this route');
    }
    // deep copy: the controller must never observe shared mutable state
    return JSON.parse(JSON.stringify(routes.get(url)));
  };
}
