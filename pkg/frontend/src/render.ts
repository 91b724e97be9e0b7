// Pure SVG renderer: string output is a function of (scene, view state)
// and nothing else, which is what the replay snapshot tests rely on.
//
// Geometry conventions from the service: y grows downward, angles are
// radians clockwise from 12 o'clock, arc nodes are annular sectors, bar
// rotation (when present) is about the bar's center.

import type { RecommendationResponse, SceneGraph, SceneNode, SceneStyle } from './types.js';

export interface ViewFlags {
  highlighted: ReadonlySet<string>;
  /** node id under the pointer; relevance curves touching it get emphasis */
  hovered?: string | null;
}

export const NO_FLAGS: ViewFlags = { highlighted: new Set<string>(), hovered: null };

const TAU = Math.PI * 2;

function esc(value: unknown): string {
  return String(value)
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

function polar(cx: number, cy: number, r: number, a: number): [number, number] {
  return [cx + r * Math.sin(a), cy - r * Math.cos(a)];
}

function num(geometry: Record<string, number | string>, key: string): number {
  const v = geometry[key];
  return typeof v === 'number' ? v : 0;
}

function fmt(x: number): string {
  return Number(x.toFixed(4)).toString();
}

/** Annular-sector path; full turns split into two arcs so SVG can draw them. */
export function arcPath(
  cx: number,
  cy: number,
  rInner: number,
  rOuter: number,
  a0: number,
  a1: number,
): string {
  const span = a1 - a0;
  if (span >= TAU - 1e-9) {
    const mid = a0 + span / 2;
    return arcPath(cx, cy, rInner, rOuter, a0, mid) + ' ' + arcPath(cx, cy, rInner, rOuter, mid, a1);
  }
  const large = span > Math.PI ? 1 : 0;
  const [ox0, oy0] = polar(cx, cy, rOuter, a0);
  const [ox1, oy1] = polar(cx, cy, rOuter, a1);
  if (rInner <= 0) {
    return (
      `M ${fmt(cx)} ${fmt(cy)} L ${fmt(ox0)} ${fmt(oy0)} ` +
      `A ${fmt(rOuter)} ${fmt(rOuter)} 0 ${large} 1 ${fmt(ox1)} ${fmt(oy1)} Z`
    );
  }
  const [ix0, iy0] = polar(cx, cy, rInner, a0);
  const [ix1, iy1] = polar(cx, cy, rInner, a1);
  return (
    `M ${fmt(ox0)} ${fmt(oy0)} ` +
    `A ${fmt(rOuter)} ${fmt(rOuter)} 0 ${large} 1 ${fmt(ox1)} ${fmt(oy1)} ` +
    `L ${fmt(ix1)} ${fmt(iy1)} ` +
    `A ${fmt(rInner)} ${fmt(rInner)} 0 ${large} 0 ${fmt(ix0)} ${fmt(iy0)} Z`
  );
}

function styleAttrs(style: SceneStyle | undefined, node: SceneNode): string {
  const parts: string[] = [];
  if (node.kind === 'bezier') {
    const stroke = style?.stroke ?? style?.fill ?? '#666';
    parts.push(`stroke="${esc(stroke)}"`, 'fill="none"');
    parts.push(`stroke-width="${fmt(num(node.geometry, 'width') || 1)}"`);
  } else if (node.kind === 'text') {
    parts.push(`fill="${esc(style?.fill ?? '#222')}"`);
  } else {
    if (style?.fill) parts.push(`fill="${esc(style.fill)}"`);
    if (style?.stroke) parts.push(`stroke="${esc(style.stroke)}"`);
  }
  if (style?.opacity !== undefined) parts.push(`opacity="${style.opacity}"`);
  return parts.join(' ');
}

function renderNode(node: SceneNode, scene: SceneGraph, flags: ViewFlags, interactive: ReadonlySet<string>): string {
  const g = node.geometry;
  const style = node.style ? scene.styles[node.style] : undefined;
  const classes = ['node', `node-${node.kind}`];
  const role = node.payload?.role;
  if (typeof role === 'string') classes.push(`role-${role}`);
  if (flags.highlighted.has(node.id)) classes.push('highlight');
  if (flags.hovered) {
    const endpoints = node.payload?.endpoints;
    if (Array.isArray(endpoints) && endpoints.includes(flags.hovered)) {
      classes.push('emphasis');
    }
  }
  if (interactive.has(node.id)) classes.push('interactive');
  const common = `data-node-id="${esc(node.id)}" class="${classes.join(' ')}" ${styleAttrs(style, node)}`;

  switch (node.kind) {
    case 'circle':
      return `<circle ${common} cx="${fmt(num(g, 'cx'))}" cy="${fmt(num(g, 'cy'))}" r="${fmt(num(g, 'r'))}"/>`;
    case 'arc': {
      const d = arcPath(
        num(g, 'cx'), num(g, 'cy'), num(g, 'r_inner'), num(g, 'r_outer'),
        num(g, 'start_angle'), num(g, 'end_angle'),
      );
      return `<path ${common} d="${d}"/>`;
    }
    case 'bar': {
      const x = num(g, 'x');
      const y = num(g, 'y');
      const w = num(g, 'width');
      const h = num(g, 'height');
      const angle = num(g, 'angle');
      const rotate = angle
        ? ` transform="rotate(${fmt((angle * 180) / Math.PI)} ${fmt(x + w / 2)} ${fmt(y + h / 2)})"`
        : '';
      return `<rect ${common} x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}"${rotate}/>`;
    }
    case 'bezier': {
      const d =
        `M ${fmt(num(g, 'x1'))} ${fmt(num(g, 'y1'))} ` +
        `C ${fmt(num(g, 'cx1'))} ${fmt(num(g, 'cy1'))}, ` +
        `${fmt(num(g, 'cx2'))} ${fmt(num(g, 'cy2'))}, ` +
        `${fmt(num(g, 'x2'))} ${fmt(num(g, 'y2'))}`;
      return `<path ${common} d="${d}"/>`;
    }
    case 'text':
      return `<text ${common} x="${fmt(num(g, 'x'))}" y="${fmt(num(g, 'y'))}">${esc(g.text ?? '')}</text>`;
  }
}

/** Render one scene to an SVG string; geometry scales uniformly via viewBox. */
export function renderScene(scene: SceneGraph, flags: ViewFlags = NO_FLAGS): string {
  const interactive = new Set(scene.interactions.map((i) => i.node_id));
  const body = scene.nodes.map((n) => renderNode(n, scene, flags, interactive)).join('');
  const { width, height } = scene.canvas;
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${fmt(width)} ${fmt(height)}" ` +
    `data-plot-kind="${esc(scene.plot_kind)}" role="img">${body}</svg>`
  );
}

/**
 * Render an expanded session line with recommendation beans appended at the
 * end of the line, exactly as many as the response carries.
 */
export function renderOverlay(
  scene: SceneGraph,
  recommendation: RecommendationResponse | null,
  flags: ViewFlags = NO_FLAGS,
): string {
  let extra = '';
  if (recommendation) {
    const spacing = (scene.meta.bean_spacing as number) ?? 24;
    const x0 = (scene.meta.next_x as number) ?? 0;
    const y = (scene.meta.line_y as number) ?? scene.canvas.height / 2;
    extra = recommendation.items
      .map((item, i) => {
        const cx = x0 + i * spacing;
        return (
          `<circle class="node node-circle rec-bean" data-rec-track="${esc(item.track_id)}" ` +
          `cx="${fmt(cx)}" cy="${fmt(y)}" r="8" fill="#ffffff" stroke="#2a7f62" stroke-width="2"/>` +
          `<text class="rec-label" x="${fmt(cx)}" y="${fmt(y + 22)}">${esc(item.track_id)}</text>`
        );
      })
      .join('');
  }
  const base = renderScene(scene, flags);
  return base.replace('</svg>', `${extra}</svg>`);
}

export function renderError(message: string): string {
  return `<div class="error-banner" role="alert">${esc(message)}</div>`;
}

export function renderRecommendationPanel(rec: RecommendationResponse | null): string {
  if (!rec) {
    return '<p class="panel-empty">Pick a recommendation mode: general, a time slot, or a single track.</p>';
  }
  const q = rec.query;
  const label =
    q.mode === 'general' ? 'General' :
    q.mode === 'time_slot' ? `Time slot ${q.slot}:00` :
    `Based on track ${q.seed_track}`;
  const items = rec.items.length
    ? rec.items
        .map(
          (it) =>
            `<li><span class="rec-track">${esc(it.title ?? it.track_id)}</span>` +
            `<span class="rec-score">${it.score.toFixed(3)}</span></li>`,
        )
        .join('')
    : '<li class="panel-empty">no recommendations</li>';
  return `<h3>${esc(label)}</h3><ol class="rec-list">${items}</ol>`;
}
