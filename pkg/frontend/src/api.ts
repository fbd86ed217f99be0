// Thin typed client for the naturenav API. The client does no geodesy of
// its own: every distance and duration shown in the UI comes from here.

import type { Poi, RouteResult, TravelMode, ApiErrorBody } from "./types.js";

export class ApiError extends Error {
  constructor(
    public code: string,
    message: string,
    public status: number,
  ) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url, init);
  } catch (err) {
    if (err instanceof DOMException && err.name === "AbortError") throw err;
    throw new ApiError("NETWORK", "cannot reach the server", 0);
  }
  if (response.status === 204) return undefined as T;
  const body = await response.json().catch(() => null);
  if (!response.ok) {
    const envelope = body as ApiErrorBody | null;
    throw new ApiError(
      envelope?.error?.code ?? "INTERNAL",
      envelope?.error?.message ?? "unexpected server error",
      response.status,
    );
  }
  return body as T;
}

export class Api {
  constructor(private baseUrl: string) {}

  private url(path: string, params?: Record<string, string>): string {
    const qs = params ? `?${new URLSearchParams(params)}` : "";
    return `${this.baseUrl}/api/v1${path}${qs}`;
  }

  listPois(near?: { lat: number; lon: number }, k?: number): Promise<{ pois: Poi[] }> {
    const params: Record<string, string> = {};
    if (near) params.near = `${near.lat},${near.lon}`;
    if (k !== undefined) params.k = String(k);
    return request(this.url("/pois", Object.keys(params).length ? params : undefined));
  }

  getPoi(id: string): Promise<Poi> {
    return request(this.url(`/pois/${encodeURIComponent(id)}`));
  }

  getRoute(
    from: { lat: number; lon: number },
    toPoi: string,
    mode: TravelMode,
    signal?: AbortSignal,
  ): Promise<RouteResult> {
    return request(
      this.url("/route", { from: `${from.lat},${from.lon}`, to_poi: toPoi, mode }),
      { signal },
    );
  }

  login(username: string, password: string): Promise<{ token: string; expires_at: number }> {
    return request(this.url("/admin/login"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ username, password }),
    });
  }

  private authed(token: string): Record<string, string> {
    return { "Content-Type": "application/json", Authorization: `Bearer ${token}` };
  }

  createPoi(token: string, fields: Partial<Poi>): Promise<Poi> {
    return request(this.url("/admin/pois"), {
      method: "POST",
      headers: this.authed(token),
      body: JSON.stringify(fields),
    });
  }

  updatePoi(token: string, id: string, fields: Partial<Poi>): Promise<Poi> {
    return request(this.url(`/admin/pois/${encodeURIComponent(id)}`), {
      method: "PUT",
      headers: this.authed(token),
      body: JSON.stringify(fields),
    });
  }

  deletePoi(token: string, id: string): Promise<void> {
    return request(this.url(`/admin/pois/${encodeURIComponent(id)}`), {
      method: "DELETE",
      headers: { Authorization: `Bearer ${token}` },
    });
  }
}

// At most one in-flight route request: a newer position or mode change
// aborts the older request so a stale route can never overwrite a fresh one.
export class RouteFetcher {
  private controller: AbortController | null = null;

  constructor(private api: Api) {}

  async fetch(
    from: { lat: number; lon: number },
    toPoi: string,
    mode: TravelMode,
  ): Promise<RouteResult | null> {
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    try {
      return await this.api.getRoute(from, toPoi, mode, controller.signal);
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") return null;
      throw err;
    } finally {
      if (this.controller === controller) this.controller = null;
    }
  }
}
