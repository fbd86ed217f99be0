// Branded splash shown before the main page.

export const DEFAULT_SPLASH_MS = 3000;

export function runSplash(
  show: () => void,
  hide: () => void,
  delayMs: number = DEFAULT_SPLASH_MS,
): Promise<void> {
  show();
  if (delayMs <= 0) {
    hide();
    return Promise.resolve();
  }
  return new Promise((resolve) => {
    setTimeout(() => {
      hide();
      resolve();
    }, delayMs);
  });
}

export function formatDistance(meters: number): string {
  if (meters < 1000) return `${Math.round(meters)} m`;
  return `${(meters / 1000).toFixed(1)} km`;
}

export function formatDuration(seconds: number): string {
  const minutes = Math.round(seconds / 60);
  if (minutes < 60) return `${minutes} min`;
  return `${Math.floor(minutes / 60)} h ${minutes % 60} min`;
}
