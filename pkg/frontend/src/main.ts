// Browser bootstrap: user picker, plot tabs, recommendation panel, and
// event delegation into the controller. Everything below is DOM plumbing;
// rendering and interaction logic live in the pure modules.

import { Api, browserFetchJson } from './api.js';
import { Controller } from './controller.js';
import { PLOT_KINDS, type PlotKind } from './types.js';

const api = new Api(browserFetchJson());
const controller = new Controller(api);

const el = {
  userSelect: document.getElementById('user-select') as HTMLSelectElement,
  tabs: document.getElementById('plot-tabs') as HTMLElement,
  main: document.getElementById('plot-main') as HTMLElement,
  overlay: document.getElementById('plot-overlay') as HTMLElement,
  panel: document.getElementById('rec-panel') as HTMLElement,
  error: document.getElementById('error-slot') as HTMLElement,
  tooltip: document.getElementById('tooltip') as HTMLElement,
};

function paint(): void {
  const r = controller.render();
  el.main.innerHTML = r.main;
  el.overlay.innerHTML = r.overlay ?? '';
  el.overlay.classList.toggle('open', r.overlay !== null);
  el.panel.innerHTML = r.panel;
  el.error.innerHTML = r.error ?? '';
  for (const button of el.tabs.querySelectorAll('button')) {
    button.classList.toggle('active', button.dataset.kind === controller.state.plotKind);
  }
}

function nodeIdFrom(event: Event): string | null {
  const target = (event.target as Element | null)?.closest('[data-node-id]');
  return target?.getAttribute('data-node-id') ?? null;
}

async function onCanvasClick(event: Event): Promise<void> {
  const nodeId = nodeIdFrom(event);
  if (!nodeId) return;
  const role = (event.target as Element).getAttribute('class') ?? '';
  if (role.includes('role-pod')) {
    await controller.onPodClick(nodeId);
  } else if (role.includes('role-hour-label')) {
    await controller.onSlotClick(nodeId);
  } else if (role.includes('role-header')) {
    await controller.onGeneralClick();
  } else {
    await controller.onTrackClick(nodeId);
  }
  paint();
}

function onCanvasHover(event: MouseEvent): void {
  const nodeId = nodeIdFrom(event);
  const before = controller.state.hoveredNodeId;
  controller.onHover(nodeId);
  if (controller.state.hoveredNodeId !== before) paint();
  const payload = nodeId ? controller.hoverPayload(nodeId) : null;
  if (!payload) {
    el.tooltip.hidden = true;
    return;
  }
  const parts = [payload.track_id, payload.genre, payload.release_year]
    .filter((v) => v !== undefined)
    .join(' / ');
  el.tooltip.textContent = payload.title ? `${parts} — ${payload.title}` : parts;
  el.tooltip.hidden = false;
  el.tooltip.style.left = `${event.clientX + 12}px`;
  el.tooltip.style.top = `${event.clientY + 12}px`;
}

async function start(): Promise<void> {
  for (const kind of PLOT_KINDS) {
    const button = document.createElement('button');
    button.dataset.kind = kind;
    button.textContent = kind.replace('_', ' ');
    button.addEventListener('click', async () => {
      await controller.selectPlot(kind as PlotKind);
      paint();
    });
    el.tabs.appendChild(button);
  }
  const listing = await api.users();
  for (const user of listing.users) {
    const option = document.createElement('option');
    option.value = user.user_id;
    option.textContent = `${user.user_id} (${user.event_count} plays)`;
    el.userSelect.appendChild(option);
  }
  el.userSelect.addEventListener('change', async () => {
    await controller.selectUser(el.userSelect.value);
    paint();
  });
  el.main.addEventListener('click', onCanvasClick);
  el.overlay.addEventListener('click', onCanvasClick);
  el.main.addEventListener('mousemove', onCanvasHover);
  el.overlay.addEventListener('mousemove', onCanvasHover);
  if (listing.users.length) {
    await controller.selectUser(listing.users[0]!.user_id);
  }
  paint();
}

start().catch((err) => {
  el.error.textContent = `failed to start: ${err}`;
});
