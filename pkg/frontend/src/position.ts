// User position: browser geolocation with a manual-entry fallback that can
// never block the app. Validation mirrors the server's lat/lon bounds so
// manual input fails with the same wording the API would use.

import type { ClientPosition, LatLon } from "./types.js";

export const PALEMBANG_CENTER: LatLon = { lat: -2.9761, lon: 104.7754 };

export const GEOLOCATION_TIMEOUT_MS = 5000;

export function validateLatLon(latRaw: string, lonRaw: string): LatLon {
  const lat = Number(latRaw);
  const lon = Number(lonRaw);
  if (!Number.isFinite(lat) || !Number.isFinite(lon)) {
    throw new Error("lat and lon must be finite numbers");
  }
  if (lat < -90 || lat > 90) throw new Error(`lat ${lat} outside [-90, 90]`);
  if (lon < -180 || lon > 180) throw new Error(`lon ${lon} outside [-180, 180]`);
  // Same canonicalization as the server: -180 becomes +180.
  return { lat, lon: lon === -180 ? 180 : lon };
}

export function acquirePosition(
  geolocation: Geolocation | undefined = typeof navigator !== "undefined"
    ? navigator.geolocation
    : undefined,
  timeoutMs: number = GEOLOCATION_TIMEOUT_MS,
): Promise<ClientPosition> {
  return new Promise((resolve) => {
    if (!geolocation) {
      resolve({ point: PALEMBANG_CENTER, source: "manual" });
      return;
    }
    let settled = false;
    const fallback = setTimeout(() => {
      if (!settled) {
        settled = true;
        resolve({ point: PALEMBANG_CENTER, source: "manual" });
      }
    }, timeoutMs);
    geolocation.getCurrentPosition(
      (pos) => {
        if (settled) return;
        settled = true;
        clearTimeout(fallback);
        resolve({
          point: { lat: pos.coords.latitude, lon: pos.coords.longitude },
          source: "geolocation",
        });
      },
      () => {
        if (settled) return;
        settled = true;
        clearTimeout(fallback);
        resolve({ point: PALEMBANG_CENTER, source: "manual" });
      },
      { timeout: timeoutMs },
    );
  });
}
