// Wire types mirroring the service's JSON. The client renders these
// verbatim and never recomputes geometry, relevance, or recommendations.

export const SUPPORTED_SCENE_VERSION = 1;

export type PlotKind = 'bean' | 'transitional_pie' | 'instrument' | 'calendar';

export const PLOT_KINDS: PlotKind[] = ['bean', 'transitional_pie', 'instrument', 'calendar'];

export interface SceneNode {
  id: string;
  kind: 'circle' | 'arc' | 'bar' | 'bezier' | 'text';
  geometry: Record<string, number | string>;
  style?: string;
  payload?: Record<string, unknown>;
}

export interface SceneInteraction {
  node_id: string;
  action: string;
  request?: string;
  payload?: Record<string, unknown>;
}

export interface SceneStyle {
  fill?: string;
  stroke?: string;
  opacity?: number;
  gray?: number;
}

export interface SceneGraph {
  scene_version: number;
  plot_kind: PlotKind;
  canvas: { width: number; height: number };
  meta: Record<string, unknown>;
  styles: Record<string, SceneStyle>;
  nodes: SceneNode[];
  interactions: SceneInteraction[];
}

export interface UserEntry {
  user_id: string;
  event_count: number;
}

export interface UsersResponse {
  snapshot_hash: string;
  users: UserEntry[];
}

export interface RecommendationItem {
  track_id: string;
  score: number;
  title?: string;
}

export interface RecommendationResponse {
  snapshot_hash: string;
  query: {
    user_id: string;
    mode: string;
    k: number;
    slot?: number;
    seed_track?: string;
  };
  items: RecommendationItem[];
}
