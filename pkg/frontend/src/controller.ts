// Interaction orchestration: descriptor-driven, cancellable, renderable.
//
// Every user gesture resolves to one of the scene's interaction entries;
// the controller issues the entry's request (if any), updates the view
// state, and re-renders. At most one follow-up request per gesture kind is
// in flight: a later click bumps the sequence number and stale responses
// are dropped on arrival.

import { Api } from './api.js';
import {
  NO_FLAGS,
  renderError,
  renderOverlay,
  renderRecommendationPanel,
  renderScene,
} from './render.js';
import { initialState, resetTransient, withScene, type ViewState } from './state.js';
import {
  SUPPORTED_SCENE_VERSION,
  type PlotKind,
  type SceneGraph,
  type SceneInteraction,
} from './types.js';

export interface Rendered {
  main: string;
  overlay: string | null;
  panel: string;
  error: string | null;
}

export class Controller {
  state: ViewState = initialState();
  private sceneSeq = 0;
  private followSeq = 0;
  private recSeq = 0;

  constructor(private readonly api: Api) {}

  private checkVersion(scene: SceneGraph): boolean {
    if (scene.scene_version !== SUPPORTED_SCENE_VERSION) {
      this.state = {
        ...this.state,
        scene: null,
        error: `unsupported scene version ${scene.scene_version} (client supports ${SUPPORTED_SCENE_VERSION})`,
      };
      return false;
    }
    return true;
  }

  async selectUser(userId: string): Promise<void> {
    this.state = { ...resetTransient(this.state), userId, scene: null };
    await this.loadScene();
  }

  async selectPlot(kind: PlotKind): Promise<void> {
    this.state = { ...resetTransient(this.state), plotKind: kind, scene: null };
    await this.loadScene();
  }

  private async loadScene(): Promise<void> {
    if (!this.state.userId) return;
    const token = ++this.sceneSeq;
    try {
      const scene = await this.api.scene(this.state.userId, this.state.plotKind);
      if (token !== this.sceneSeq) return; // superseded
      if (!this.checkVersion(scene)) return;
      this.state = withScene(this.state, scene);
    } catch (err) {
      if (token !== this.sceneSeq) return;
      this.state = { ...this.state, scene: null, error: String(err) };
    }
  }

  private interactionsFor(nodeId: string): SceneInteraction[] {
    const scenes = [this.state.scene, this.state.overlayScene];
    const out: SceneInteraction[] = [];
    for (const scene of scenes) {
      for (const entry of scene?.interactions ?? []) {
        if (entry.node_id === nodeId) out.push(entry);
      }
    }
    return out;
  }

  /** Pod click: unfold (bean) or expand (calendar); second click collapses. */
  async onPodClick(nodeId: string): Promise<void> {
    if (this.state.expandedPodId === nodeId) {
      this.state = {
        ...this.state,
        expandedPodId: null,
        overlayScene: null,
        overlayRecommendation: null,
      };
      return;
    }
    const entry = this.interactionsFor(nodeId).find(
      (i) => (i.action === 'unfold' || i.action === 'expand') && i.request,
    );
    if (!entry?.request) return;
    const token = ++this.followSeq;
    try {
      const sub = await this.api.followScene(entry.request);
      if (token !== this.followSeq) return;
      if (sub.scene_version !== SUPPORTED_SCENE_VERSION) {
        this.state = { ...this.state, error: `unsupported scene version ${sub.scene_version}` };
        return;
      }
      // single-overlay rule: a new expansion replaces the previous one
      this.state = {
        ...this.state,
        expandedPodId: nodeId,
        overlayScene: sub,
        overlayRecommendation: null,
        error: null,
      };
    } catch (err) {
      if (token !== this.followSeq) return;
      this.state = { ...this.state, error: String(err) };
    }
  }

  /**
   * Track click. Instrument: highlight the related nodes listed inline in
   * the scene. Calendar overlay beans: fetch single-track recommendations
   * and append them to the line (and mirror them in the panel).
   */
  async onTrackClick(nodeId: string): Promise<void> {
    const entries = this.interactionsFor(nodeId);
    const highlight = entries.find((i) => i.action === 'highlight');
    if (highlight) {
      const ids = (highlight.payload?.node_ids as string[] | undefined) ?? [];
      const trackId = this.trackIdOf(nodeId);
      this.state = {
        ...this.state,
        highlightedTrackId: trackId,
        highlightedNodes: new Set(ids),
      };
      return;
    }
    const rec = entries.find((i) => i.action === 'recommend_track' && i.request);
    if (rec?.request) {
      await this.fetchRecommendation(rec.request, { intoOverlay: true });
    }
  }

  async onSlotClick(nodeId: string): Promise<void> {
    const entry = this.interactionsFor(nodeId).find(
      (i) => i.action === 'recommend_slot' && i.request,
    );
    if (entry?.request) await this.fetchRecommendation(entry.request, { intoOverlay: false });
  }

  async onGeneralClick(): Promise<void> {
    const entry = (this.state.scene?.interactions ?? []).find(
      (i) => i.action === 'recommend_general' && i.request,
    );
    if (entry?.request) await this.fetchRecommendation(entry.request, { intoOverlay: false });
  }

  private async fetchRecommendation(url: string, opts: { intoOverlay: boolean }): Promise<void> {
    const token = ++this.recSeq;
    try {
      const rec = await this.api.followRecommendation(url);
      if (token !== this.recSeq) return;
      this.state = {
        ...this.state,
        panelRecommendation: rec,
        overlayRecommendation: opts.intoOverlay ? rec : this.state.overlayRecommendation,
        error: null,
      };
    } catch (err) {
      if (token !== this.recSeq) return;
      // inline message, state otherwise unchanged
      this.state = { ...this.state, error: String(err) };
    }
  }

  private trackIdOf(nodeId: string): string | null {
    for (const scene of [this.state.scene, this.state.overlayScene]) {
      const node = scene?.nodes.find((n) => n.id === nodeId);
      const track = node?.payload?.track_id;
      if (typeof track === 'string') return track;
    }
    return null;
  }

  hoverPayload(nodeId: string): Record<string, unknown> | null {
    const entry = this.interactionsFor(nodeId).find((i) => i.action === 'hover');
    return (entry?.payload as Record<string, unknown>) ?? null;
  }

  /** Pointer moved onto a node (or off, with null): emphasize its edges. */
  onHover(nodeId: string | null): void {
    if (this.state.hoveredNodeId !== nodeId) {
      this.state = { ...this.state, hoveredNodeId: nodeId };
    }
  }

  render(): Rendered {
    const flags = { highlighted: this.state.highlightedNodes, hovered: this.state.hoveredNodeId };
    return {
      main: this.state.scene ? renderScene(this.state.scene, flags) : '',
      overlay: this.state.overlayScene
        ? renderOverlay(this.state.overlayScene, this.state.overlayRecommendation, {
            ...NO_FLAGS,
            hovered: this.state.hoveredNodeId,
          })
        : null,
      panel: renderRecommendationPanel(this.state.panelRecommendation),
      error: this.state.error ? renderError(this.state.error) : null,
    };
  }
}

// --- interaction scripts (used by replay tests and recordings) -------------

export type ScriptStep =
  | { op: 'selectUser'; userId: string }
  | { op: 'selectPlot'; kind: PlotKind }
  | { op: 'podClick'; nodeId: string }
  | { op: 'trackClick'; nodeId: string }
  | { op: 'slotClick'; nodeId: string }
  | { op: 'generalClick' };

export async function replay(controller: Controller, script: ScriptStep[]): Promise<string[]> {
  const frames: string[] = [];
  for (const step of script) {
    switch (step.op) {
      case 'selectUser':
        await controller.selectUser(step.userId);
        break;
      case 'selectPlot':
        await controller.selectPlot(step.kind);
        break;
      case 'podClick':
        await controller.onPodClick(step.nodeId);
        break;
      case 'trackClick':
        await controller.onTrackClick(step.nodeId);
        break;
      case 'slotClick':
        await controller.onSlotClick(step.nodeId);
        break;
      case 'generalClick':
        await controller.onGeneralClick();
        break;
    }
    const r = controller.render();
    frames.push([r.main, r.overlay ?? '', r.panel, r.error ?? ''].join('␞'));
  }
  return frames;
}
