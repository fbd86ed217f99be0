// Single-page wiring: splash -> destination list -> detail map, plus the
// admin pages. All state shown on screen is reconstructable from API
// responses plus the current ClientPosition.

import { Api, ApiError, RouteFetcher } from "./api.js";
import { renderMap } from "./map.js";
import { acquirePosition, validateLatLon, PALEMBANG_CENTER } from "./position.js";
import { runSplash, formatDistance, formatDuration } from "./splash.js";
import type { ClientPosition, Poi, TravelMode } from "./types.js";

export interface AppConfig {
  apiBaseUrl: string;
  splashMs?: number;
}

interface AppState {
  position: ClientPosition;
  mode: TravelMode;
  adminToken: string | null; // memory only, never persisted
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text !== undefined) node.textContent = text;
  return node;
}

export class App {
  readonly api: Api;
  private routes: RouteFetcher;
  private state: AppState = {
    position: { point: PALEMBANG_CENTER, source: "manual" },
    mode: "walking",
    adminToken: null,
  };

  constructor(
    private root: HTMLElement,
    private config: AppConfig,
  ) {
    this.api = new Api(config.apiBaseUrl);
    this.routes = new RouteFetcher(this.api);
  }

  async start(): Promise<void> {
    await runSplash(
      () => this.renderSplash(),
      () => undefined,
      this.config.splashMs ?? undefined,
    );
    this.state.position = await acquirePosition();
    await this.showList();
  }

  private clear(): HTMLElement {
    this.root.innerHTML = "";
    return this.root;
  }

  private renderSplash(): void {
    const root = this.clear();
    const splash = el("div", { class: "splash" });
    splash.append(
      el("h1", {}, "Palembang Nature Spots"),
      el("p", {}, "Finding natural places around you…"),
    );
    root.append(splash);
  }

  async showList(): Promise<void> {
    const root = this.clear();
    const header = el("header", {});
    header.append(el("h1", {}, "Natural Tourism"));
    const adminLink = el("button", { class: "admin-link" }, "Admin");
    adminLink.onclick = () => void this.showAdmin();
    header.append(adminLink);
    root.append(header);

    const positionBar = this.renderPositionBar(() => void this.showList());
    root.append(positionBar);

    const list = el("ul", { class: "poi-list" });
    root.append(list);
    try {
      const { pois } = await this.api.listPois(this.state.position.point, 50);
      for (const poi of pois) {
        const item = el("li", { class: "poi-item", "data-poi-id": poi.id });
        const button = el("button", {}, poi.name);
        button.onclick = () => void this.showDetail(poi.id);
        item.append(button);
        if (poi.distance_m !== undefined) {
          item.append(el("span", { class: "distance" }, formatDistance(poi.distance_m)));
        }
        list.append(item);
      }
    } catch (err) {
      root.append(this.renderError(err, () => void this.showList()));
    }
  }

  async showDetail(poiId: string): Promise<void> {
    const root = this.clear();
    let poi: Poi;
    try {
      poi = await this.api.getPoi(poiId);
    } catch (err) {
      root.append(this.renderError(err, () => void this.showDetail(poiId)));
      return;
    }
    const back = el("button", { class: "back" }, "← All destinations");
    back.onclick = () => void this.showList();
    root.append(back, el("h2", {}, poi.name), el("p", { class: "description" }, poi.description));

    const modeSelect = el("select", { class: "mode" });
    for (const mode of ["walking", "driving"] as const) {
      const option = el("option", { value: mode }, mode);
      if (mode === this.state.mode) option.setAttribute("selected", "");
      modeSelect.append(option);
    }
    modeSelect.onchange = () => {
      this.state.mode = modeSelect.value as TravelMode;
      void refresh();
    };
    root.append(this.renderPositionBar(() => void refresh()), modeSelect);

    const mapBox = el("div", { class: "map" });
    const summary = el("p", { class: "route-summary" });
    root.append(mapBox, summary);

    const refresh = async () => {
      const route = await this.routes.fetch(
        this.state.position.point,
        poi.id,
        this.state.mode,
      );
      if (route === null) return; // superseded by a newer request
      mapBox.innerHTML = renderMap(
        this.state.position.point,
        { lat: poi.lat, lon: poi.lon },
        route.polyline,
        route.kind,
      );
      const label = route.kind === "straight_line" ? "direct distance" : "route";
      summary.textContent =
        `${label}: ${formatDistance(route.distance_m)}, ` +
        `${formatDuration(route.duration_s)} ${route.mode}`;
    };
    try {
      await refresh();
    } catch (err) {
      root.append(this.renderError(err, () => void refresh()));
    }
  }

  private renderPositionBar(onChange: () => void): HTMLElement {
    const bar = el("form", { class: "position-bar" });
    const lat = el("input", {
      name: "lat",
      value: String(this.state.position.point.lat),
    });
    const lon = el("input", {
      name: "lon",
      value: String(this.state.position.point.lon),
    });
    const error = el("span", { class: "field-error" });
    const submit = el("button", { type: "submit" }, "Set position");
    const source = el("span", { class: "position-source" }, this.state.position.source);
    bar.append("My position: ", lat, lon, submit, source, error);
    bar.onsubmit = (event) => {
      event.preventDefault();
      try {
        const point = validateLatLon(lat.value, lon.value);
        this.state.position = { point, source: "manual" };
        source.textContent = "manual";
        error.textContent = "";
        onChange();
      } catch (err) {
        error.textContent = (err as Error).message;
      }
    };
    return bar;
  }

  private renderError(err: unknown, retry: () => void): HTMLElement {
    const box = el("div", { class: "error-box", role: "alert" });
    const message =
      err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
    box.append(el("p", {}, message));
    const button = el("button", {}, "Retry");
    button.onclick = retry;
    box.append(button);
    return box;
  }

  // --- admin ---

  async showAdmin(): Promise<void> {
    if (this.state.adminToken === null) {
      this.renderLogin();
      return;
    }
    await this.renderAdminTable();
  }

  private renderLogin(): void {
    const root = this.clear();
    root.append(el("h2", {}, "Admin login"));
    const form = el("form", { class: "login-form" });
    const username = el("input", { name: "username", autocomplete: "username" });
    const password = el("input", { name: "password", type: "password" });
    const error = el("p", { class: "auth-error", role: "alert" });
    const submit = el("button", { type: "submit" }, "Log in");
    form.append("Username ", username, " Password ", password, submit, error);
    form.onsubmit = async (event) => {
      event.preventDefault();
      try {
        const session = await this.api.login(username.value, password.value);
        this.state.adminToken = session.token;
        await this.renderAdminTable();
      } catch (err) {
        error.textContent =
          err instanceof ApiError && err.status === 401
            ? "Invalid username or password"
            : String(err);
      }
    };
    const back = el("button", { class: "back" }, "← Back");
    back.onclick = () => void this.showList();
    root.append(form, back);
  }

  private async renderAdminTable(): Promise<void> {
    const token = this.state.adminToken;
    if (token === null) return this.renderLogin();
    const root = this.clear();
    root.append(el("h2", {}, "Manage destinations"));
    const table = el("table", { class: "admin-table" });
    root.append(table);
    const formError = el("p", { class: "field-error", role: "alert" });

    const reload = () => void this.renderAdminTable();
    try {
      const { pois } = await this.api.listPois();
      for (const poi of pois) {
        const row = el("tr", { "data-poi-id": poi.id });
        row.append(
          el("td", {}, poi.name),
          el("td", {}, `${poi.lat}, ${poi.lon}`),
        );
        const actions = el("td", {});
        const del = el("button", { class: "delete" }, "Delete");
        del.onclick = async () => {
          try {
            await this.api.deletePoi(token, poi.id);
            reload();
          } catch (err) {
            formError.textContent = String(err);
          }
        };
        actions.append(del);
        row.append(actions);
        table.append(row);
      }
    } catch (err) {
      root.append(this.renderError(err, reload));
      return;
    }

    const form = el("form", { class: "create-form" });
    const name = el("input", { name: "name", placeholder: "Name" });
    const description = el("input", { name: "description", placeholder: "Description" });
    const lat = el("input", { name: "lat", placeholder: "Latitude" });
    const lon = el("input", { name: "lon", placeholder: "Longitude" });
    const submit = el("button", { type: "submit" }, "Create");
    form.append(name, description, lat, lon, submit, formError);
    form.onsubmit = async (event) => {
      event.preventDefault();
      try {
        const point = validateLatLon(lat.value, lon.value);
        await this.api.createPoi(token, {
          name: name.value,
          description: description.value,
          lat: point.lat,
          lon: point.lon,
        });
        reload();
      } catch (err) {
        formError.textContent =
          err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
      }
    };
    const back = el("button", { class: "back" }, "← Back to list");
    back.onclick = () => void this.showList();
    root.append(form, back);
  }
}

export function mount(root: HTMLElement, config: AppConfig): App {
  const app = new App(root, config);
  void app.start();
  return app;
}
