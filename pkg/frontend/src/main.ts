/** Application wiring: file picker / URL loading, slider, keyboard,
 * 3D view, and the signature charts with a synchronized cursor. */

import * as THREE from "three";

import { BundleError, intervalCount } from "./bundle.js";
import { countsMatchSignatures, drawLists } from "./classify.js";
import { clickToIndex, cursorX, stepPolyline } from "./charts.js";
import { buildSceneGroup, boundingSphere } from "./render.js";
import {
  ViewState,
  loadBundle,
  setInterval as setStateInterval,
  setToggle,
  sliderPositions,
  stepInterval,
} from "./state.js";

let state: ViewState | null = null;

const scene = new THREE.Scene();
scene.background = new THREE.Color(0xf4f4f0);
const camera = new THREE.PerspectiveCamera(45, 1, 0.01, 10_000);
const renderer = new THREE.WebGLRenderer({ antialias: true });
let shapeGroup: THREE.Group | null = null;
let orbit = { theta: 0.9, phi: 1.0, radius: 10, center: new THREE.Vector3() };

function byId<T extends HTMLElement>(id: string): T {
  return document.getElementById(id) as T;
}

function showBanner(message: string, kind: "error" | "notice") {
  const banner = byId<HTMLDivElement>("banner");
  banner.textContent = message;
  banner.className = kind;
  banner.style.display = "block";
}

function hideBanner() {
  byId<HTMLDivElement>("banner").style.display = "none";
}

function applyCamera() {
  const { theta, phi, radius, center } = orbit;
  camera.position.set(
    center.x + radius * Math.sin(phi) * Math.cos(theta),
    center.y + radius * Math.cos(phi),
    center.z + radius * Math.sin(phi) * Math.sin(theta)
  );
  camera.lookAt(center);
}

function redraw() {
  if (!state) {
    return;
  }
  const lists = drawLists(state.bundle, state.interval);
  if (shapeGroup) {
    scene.remove(shapeGroup);
  }
  const pointSize = orbit.radius / 60;
  shapeGroup = buildSceneGroup(state.bundle, lists, state.toggles, pointSize);
  scene.add(shapeGroup);
  renderer.render(scene, camera);

  const alphaLo = state.bundle.spectrum[state.interval].alpha;
  const alphaHi = state.bundle.spectrum[state.interval + 1].alpha;
  byId<HTMLSpanElement>("status").textContent =
    `interval ${state.interval} / ${intervalCount(state.bundle) - 1}` +
    `  alpha in (${alphaLo === null ? "inf" : alphaLo.toFixed(4)}, ` +
    `${alphaHi === null ? "inf" : alphaHi.toFixed(4)})`;

  const counts = lists.counts;
  byId<HTMLSpanElement>("counts").textContent = [
    `${counts["regular_triangles"] ?? 0} regular`,
    `${counts["singular_triangles"] ?? 0} singular triangles`,
    `${counts["singular_edges"] ?? 0} singular edges`,
    `${counts["singular_vertices"] ?? 0} singular vertices`,
  ].join(", ");
  if (!countsMatchSignatures(state.bundle, state.interval)) {
    showBanner("bundle inconsistency: replayed counts differ from series", "error");
  }
  drawCharts();
}

function moveTo(index: number) {
  if (!state) {
    return;
  }
  state = setStateInterval(state, index);
  const slider = byId<HTMLInputElement>("slider");
  slider.value = String(state.interval);
  if (state.clampNotice) {
    showBanner(state.clampNotice, "notice");
  } else {
    hideBanner();
  }
  redraw();
}

const CHARTS: { id: string; pick: (s: ViewState) => number[]; label: string }[] = [
  { id: "chart-c", pick: (s) => s.bundle.signatures.components, label: "components" },
  { id: "chart-v", pick: (s) => s.bundle.signatures.volume.float, label: "volume" },
  { id: "chart-a", pick: (s) => s.bundle.signatures.area, label: "area" },
  {
    id: "chart-f",
    pick: (s) => s.bundle.signatures.face_counts["regular_triangles"],
    label: "regular triangles",
  },
];

function drawCharts() {
  if (!state) {
    return;
  }
  const count = intervalCount(state.bundle);
  for (const chart of CHARTS) {
    const canvas = byId<HTMLCanvasElement>(chart.id);
    const ctx = canvas.getContext("2d")!;
    const { width, height } = canvas;
    ctx.clearRect(0, 0, width, height);
    ctx.fillStyle = "#ffffff";
    ctx.fillRect(0, 0, width, height);
    const values = chart.pick(state);
    ctx.strokeStyle = "#2a6fb0";
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    const pts = stepPolyline(values);
    pts.forEach((p, i) => {
      const x = p.x * width;
      const y = height - 4 - p.y * (height - 12);
      if (i === 0) {
        ctx.moveTo(x, y);
      } else {
        ctx.lineTo(x, y);
      }
    });
    ctx.stroke();
    ctx.strokeStyle = "#d94a4a";
    ctx.beginPath();
    const cx = cursorX(state.interval, width, count);
    ctx.moveTo(cx, 0);
    ctx.lineTo(cx, height);
    ctx.stroke();
    ctx.fillStyle = "#333";
    ctx.font = "10px sans-serif";
    ctx.fillText(chart.label, 4, 10);
  }
}

function acceptBundle(text: string, label: string) {
  try {
    state = loadBundle(text);
  } catch (err) {
    if (err instanceof BundleError) {
      showBanner(`could not load ${label}: ${err.message}`, "error");
      return;
    }
    throw err;
  }
  hideBanner();
  const slider = byId<HTMLInputElement>("slider");
  slider.min = "0";
  slider.max = String(sliderPositions(state) - 1);
  slider.value = String(state.interval);
  const sphere = boundingSphere(state.bundle);
  orbit = { theta: 0.9, phi: 1.0, radius: sphere.radius * 3, center: sphere.center };
  camera.near = sphere.radius / 100;
  camera.far = sphere.radius * 100;
  camera.updateProjectionMatrix();
  applyCamera();
  byId<HTMLSpanElement>("source").textContent =
    `${label}: ${state.bundle.n} points, ${sliderPositions(state)} family members`;
  redraw();
}

function wire() {
  const viewport = byId<HTMLDivElement>("viewport");
  renderer.setSize(viewport.clientWidth, viewport.clientHeight);
  camera.aspect = viewport.clientWidth / viewport.clientHeight;
  camera.updateProjectionMatrix();
  viewport.appendChild(renderer.domElement);
  scene.add(new THREE.AmbientLight(0xffffff, 0.65));
  const sun = new THREE.DirectionalLight(0xffffff, 1.2);
  sun.position.set(1, 2, 1.5);
  scene.add(sun);

  byId<HTMLInputElement>("file").addEventListener("change", (ev) => {
    const input = ev.target as HTMLInputElement;
    const file = input.files?.[0];
    if (!file) {
      return;
    }
    file.text().then((text) => acceptBundle(text, file.name));
  });

  byId<HTMLInputElement>("slider").addEventListener("input", (ev) => {
    moveTo(Number((ev.target as HTMLInputElement).value));
  });

  window.addEventListener("keydown", (ev) => {
    if (!state) {
      return;
    }
    if (ev.key === "ArrowRight" || ev.key === "ArrowUp") {
      state = stepInterval(state, 1);
      moveTo(state.interval);
    } else if (ev.key === "ArrowLeft" || ev.key === "ArrowDown") {
      state = stepInterval(state, -1);
      moveTo(state.interval);
    }
  });

  for (const chart of CHARTS) {
    const canvas = byId<HTMLCanvasElement>(chart.id);
    canvas.addEventListener("click", (ev) => {
      if (!state) {
        return;
      }
      const rect = canvas.getBoundingClientRect();
      moveTo(
        clickToIndex(
          ev.clientX - rect.left,
          rect.width,
          intervalCount(state.bundle)
        )
      );
    });
  }

  for (const name of [
    "interior",
    "regular",
    "singular",
    "triangles",
    "edges",
    "vertices",
  ] as const) {
    const box = byId<HTMLInputElement>(`toggle-${name}`);
    box.addEventListener("change", () => {
      if (state) {
        state = setToggle(state, name, box.checked);
        redraw();
      }
    });
  }

  let dragging = false;
  let lastX = 0;
  let lastY = 0;
  renderer.domElement.addEventListener("mousedown", (ev) => {
    dragging = true;
    lastX = ev.clientX;
    lastY = ev.clientY;
  });
  window.addEventListener("mouseup", () => (dragging = false));
  window.addEventListener("mousemove", (ev) => {
    if (!dragging) {
      return;
    }
    orbit.theta += (ev.clientX - lastX) * 0.01;
    orbit.phi = Math.min(3.0, Math.max(0.15, orbit.phi + (ev.clientY - lastY) * 0.01));
    lastX = ev.clientX;
    lastY = ev.clientY;
    applyCamera();
    if (state) {
      renderer.render(scene, camera);
    }
  });
  renderer.domElement.addEventListener("wheel", (ev) => {
    orbit.radius *= ev.deltaY > 0 ? 1.1 : 0.9;
    applyCamera();
    if (state) {
      renderer.render(scene, camera);
    }
  });

  const params = new URLSearchParams(window.location.search);
  const url = params.get("bundle");
  if (url) {
    fetch(url)
      .then((resp) => {
        if (!resp.ok) {
          throw new BundleError(`${resp.status} ${resp.statusText}`);
        }
        return resp.text();
      })
      .then((text) => acceptBundle(text, url))
      .catch((err) => showBanner(`could not fetch ${url}: ${err.message}`, "error"));
  }
}

wire();
