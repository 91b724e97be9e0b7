// View state and its transition rules. All transient interaction state
// (expanded pod, highlight, overlay content, panel) resets when the user
// or the plot changes, so stale node references can never leak across
// scenes.

import type { PlotKind, RecommendationResponse, SceneGraph } from './types.js';

export interface ViewState {
  userId: string | null;
  plotKind: PlotKind;
  scene: SceneGraph | null;
  expandedPodId: string | null;
  overlayScene: SceneGraph | null;
  overlayRecommendation: RecommendationResponse | null;
  highlightedTrackId: string | null;
  highlightedNodes: ReadonlySet<string>;
  hoveredNodeId: string | null;
  panelRecommendation: RecommendationResponse | null;
  error: string | null;
}

export function initialState(): ViewState {
  return {
    userId: null,
    plotKind: 'bean',
    scene: null,
    expandedPodId: null,
    overlayScene: null,
    overlayRecommendation: null,
    highlightedTrackId: null,
    highlightedNodes: new Set(),
    hoveredNodeId: null,
    panelRecommendation: null,
    error: null,
  };
}

export function resetTransient(state: ViewState): ViewState {
  return {
    ...state,
    expandedPodId: null,
    overlayScene: null,
    overlayRecommendation: null,
    highlightedTrackId: null,
    highlightedNodes: new Set(),
    hoveredNodeId: null,
    panelRecommendation: null,
    error: null,
  };
}

export function withScene(state: ViewState, scene: SceneGraph): ViewState {
  return { ...resetTransient(state), scene };
}

/** Node ids present in the current scene; highlight/expansion must stay inside. */
export function sceneNodeIds(state: ViewState): Set<string> {
  return new Set((state.scene?.nodes ?? []).map((n) => n.id));
}
