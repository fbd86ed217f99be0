// Self-contained SVG map: no tile server, no external map domains. Points
// are projected with a plain equirectangular fit over the rendered extent,
// which is fine at city scale.

import type { LatLon, RouteKind } from "./types.js";

export interface Viewport {
  width: number;
  height: number;
  minLat: number;
  maxLat: number;
  minLon: number;
  maxLon: number;
}

const PAD_DEG = 0.004;

export function fitViewport(points: LatLon[], width = 640, height = 480): Viewport {
  let minLat = Infinity;
  let maxLat = -Infinity;
  let minLon = Infinity;
  let maxLon = -Infinity;
  for (const p of points) {
    minLat = Math.min(minLat, p.lat);
    maxLat = Math.max(maxLat, p.lat);
    minLon = Math.min(minLon, p.lon);
    maxLon = Math.max(maxLon, p.lon);
  }
  if (points.length === 0) {
    minLat = maxLat = 0;
    minLon = maxLon = 0;
  }
  return {
    width,
    height,
    minLat: minLat - PAD_DEG,
    maxLat: maxLat + PAD_DEG,
    minLon: minLon - PAD_DEG,
    maxLon: maxLon + PAD_DEG,
  };
}

export function project(vp: Viewport, p: LatLon): { x: number; y: number } {
  const x = ((p.lon - vp.minLon) / (vp.maxLon - vp.minLon)) * vp.width;
  // SVG y grows downward; latitude grows upward.
  const y = ((vp.maxLat - p.lat) / (vp.maxLat - vp.minLat)) * vp.height;
  return { x, y };
}

function marker(vp: Viewport, p: LatLon, color: string, cls: string): string {
  const { x, y } = project(vp, p);
  return (
    `<circle class="${cls}" cx="${x.toFixed(1)}" cy="${y.toFixed(1)}" r="8" ` +
    `fill="${color}" stroke="white" stroke-width="2"/>`
  );
}

export function renderMap(
  user: LatLon,
  destination: LatLon,
  polyline: LatLon[],
  kind: RouteKind,
): string {
  const vp = fitViewport([user, destination, ...polyline]);
  const pointsAttr = polyline
    .map((p) => {
      const { x, y } = project(vp, p);
      return `${x.toFixed(1)},${y.toFixed(1)}`;
    })
    .join(" ");
  const dash = kind === "straight_line" ? ' stroke-dasharray="8 6"' : "";
  return (
    `<svg viewBox="0 0 ${vp.width} ${vp.height}" xmlns="http://www.w3.org/2000/svg">` +
    `<rect width="${vp.width}" height="${vp.height}" fill="#e8f0e4"/>` +
    `<polyline class="route route-${kind}" points="${pointsAttr}" fill="none" ` +
    `stroke="#1660d6" stroke-width="3"${dash}/>` +
    // Red pointer: the user's current position; green pointer: the spot.
    marker(vp, user, "#d62d1e", "marker-user") +
    marker(vp, destination, "#1c9e3c", "marker-destination") +
    `</svg>`
  );
}
