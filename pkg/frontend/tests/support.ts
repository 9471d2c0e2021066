/**
 * Shared test plumbing: fixtures captured from a live service (see
 * scripts/capture_fixtures.py) and a recording fake fetch driven by a
 * per-test route function.
 */

import { readFileSync } from "node:fs";
import { Fetch } from "../src/api.js";

export function loadFixture<T>(name: string): T {
  const url = new URL(`./fixtures/${name}.json`, import.meta.url);
  return JSON.parse(readFileSync(url, "utf8")) as T;
}

export interface RecordedCall {
  method: string;
  path: string;
  body: unknown;
}

export interface RouteResult {
  status?: number;
  body: unknown;
}

export type Route = (call: RecordedCall) => RouteResult | Promise<RouteResult>;

/** Fetch fake: every call is recorded, responses come from `route`. */
export function fakeService(route: Route): { fetch: Fetch; calls: RecordedCall[] } {
  const calls: RecordedCall[] = [];
  const fetch: Fetch = async (url, init) => {
    const call: RecordedCall = {
      method: init?.method ?? "GET",
      path: String(url),
      body: typeof init?.body === "string" ? JSON.parse(init.body) : undefined,
    };
    calls.push(call);
    const result = await route(call);
    return new Response(JSON.stringify(result.body), {
      status: result.status ?? 200,
      headers: { "content-type": "application/json" },
    });
  };
  return { fetch, calls };
}
