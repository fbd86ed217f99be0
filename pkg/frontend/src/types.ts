// Wire types mirroring the server's /api/v1 JSON shapes.

export interface LatLon {
  lat: number;
  lon: number;
}

export interface Poi {
  id: string;
  name: string;
  description: string;
  category: string;
  lat: number;
  lon: number;
  created_at: string;
  updated_at: string;
  distance_m?: number;
}

export type RouteKind = "graph" | "straight_line";
export type TravelMode = "walking" | "driving";

export interface RouteResult {
  polyline: LatLon[];
  distance_m: number;
  duration_s: number;
  mode: TravelMode;
  kind: RouteKind;
}

export interface ApiErrorBody {
  error: { code: string; message: string };
}

export type PositionSource = "geolocation" | "manual";

export interface ClientPosition {
  point: LatLon;
  source: PositionSource;
}
