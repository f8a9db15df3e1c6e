import init, { Scene } from "./pkg/ldml_wasm_demo.js";

const canvas = document.getElementById("plot");
const ctx = canvas.getContext("2d");
const status = document.getElementById("status");
const colors = ["#1f77b4", "#2ca02c", "#9467bd"];

let scene = null;
let results = { ours: null, baseline: null };
let view = null;

function value(id) {
  return Number(document.getElementById(id).value);
}

// Fit the view to the inlier points so far-away noise does not squash them.
function fitView(points, labels) {
  let [x0, x1, y0, y1] = [Infinity, -Infinity, Infinity, -Infinity];
  for (let i = 0; i < labels.length; i++) {
    if (labels[i] < 0) continue;
    const x = points[2 * i], y = points[2 * i + 1];
    x0 = Math.min(x0, x); x1 = Math.max(x1, x);
    y0 = Math.min(y0, y); y1 = Math.max(y1, y);
  }
  const pad = 0.15 * Math.max(x1 - x0, y1 - y0);
  const scale = Math.min(canvas.width / (x1 - x0 + 2 * pad), canvas.height / (y1 - y0 + 2 * pad));
  return { x0: x0 - pad, y1: y1 + pad, scale };
}

function toCanvas(x, y) {
  return [(x - view.x0) * view.scale, (view.y1 - y) * view.scale];
}

function draw() {
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (!scene) return;
  const points = scene.points();
  const labels = scene.labels();
  for (let i = 0; i < labels.length; i++) {
    const [cx, cy] = toCanvas(points[2 * i], points[2 * i + 1]);
    ctx.fillStyle = labels[i] < 0 ? "#aaaaaa" : colors[labels[i] % colors.length];
    ctx.fillRect(cx - 1, cy - 1, 2.5, 2.5);
  }
  const truth = scene.true_means();
  ctx.strokeStyle = "#000000";
  ctx.lineWidth = 2;
  for (let j = 0; j < truth.length; j += 2) {
    const [cx, cy] = toCanvas(truth[j], truth[j + 1]);
    ctx.beginPath();
    ctx.moveTo(cx - 7, cy - 7); ctx.lineTo(cx + 7, cy + 7);
    ctx.moveTo(cx + 7, cy - 7); ctx.lineTo(cx - 7, cy + 7);
    ctx.stroke();
  }
  if (results.ours) {
    ctx.strokeStyle = "#d62728";
    const m = results.ours.means;
    for (let j = 0; j < m.length; j += 2) {
      const [cx, cy] = toCanvas(m[j], m[j + 1]);
      ctx.beginPath();
      ctx.arc(cx, cy, 10, 0, 2 * Math.PI);
      ctx.stroke();
    }
  }
  if (results.baseline) {
    ctx.strokeStyle = "#ff7f0e";
    const m = results.baseline.means;
    for (let j = 0; j < m.length; j += 2) {
      const [cx, cy] = toCanvas(m[j], m[j + 1]);
      ctx.strokeRect(cx - 8, cy - 8, 16, 16);
    }
  }
}

function describe(name, r) {
  return r ? `${name}: list size ${r.list_size}, worst error ${r.worst_error.toFixed(3)} (${r.ms.toFixed(0)} ms)` : "";
}

function report() {
  status.textContent = [describe("full algorithm", results.ours), describe(results.baselineName, results.baseline)]
    .filter((s) => s)
    .join("\n") || "scene ready";
}

function run(algorithm) {
  const t0 = performance.now();
  const out = scene.run(algorithm, value("wlow"), value("seed"));
  const r = { means: out.means(), list_size: out.list_size(), worst_error: out.worst_error(), ms: performance.now() - t0 };
  out.free();
  return r;
}

function guarded(action) {
  return () => {
    try {
      action();
    } catch (e) {
      status.textContent = `error: ${e.message ?? e}`;
    }
  };
}

document.getElementById("generate").onclick = guarded(() => {
  if (scene) scene.free();
  scene = new Scene(value("seed"), document.getElementById("attack").value, value("eps"), value("n"));
  results = { ours: null, baseline: null };
  view = fitView(scene.points(), scene.labels());
  draw();
  report();
});

document.getElementById("run-ours").onclick = guarded(() => {
  if (!scene) throw new Error("generate a scene first");
  results.ours = run("ours");
  draw();
  report();
});

document.getElementById("run-baseline").onclick = guarded(() => {
  if (!scene) throw new Error("generate a scene first");
  const select = document.getElementById("baseline");
  results.baseline = run(select.value);
  results.baselineName = select.options[select.selectedIndex].text;
  draw();
  report();
});

await init();
document.getElementById("generate").click();
