import init, { limit_set, validate_trefoil, monodromy } from "./pkg/wildknot_demo.js";

const $ = (id) => document.getElementById(id);
let points = new Float64Array(0);

function draw() {
  const canvas = $("view");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const n = points.length / 4;
  if (n === 0) return;

  const t = ($("angle").value * Math.PI) / 180;
  const c = Math.cos(t), s = Math.sin(t);
  const k = Number($("colour").value);
  let lo = Infinity, hi = -Infinity, extent = 0;
  const xy = new Float64Array(2 * n);
  for (let i = 0; i < n; i++) {
    const [x1, x2, x3] = [points[4 * i], points[4 * i + 1], points[4 * i + 2]];
    // turn about the x3 axis, then tip toward the viewer
    const u = c * x1 - s * x2;
    const v = 0.5 * (s * x1 + c * x2) + 0.87 * x3;
    xy[2 * i] = u;
    xy[2 * i + 1] = v;
    extent = Math.max(extent, Math.abs(u), Math.abs(v));
    lo = Math.min(lo, points[4 * i + k]);
    hi = Math.max(hi, points[4 * i + k]);
  }
  const scale = (0.45 * Math.min(canvas.width, canvas.height)) / (extent || 1);
  for (let i = 0; i < n; i++) {
    const f = hi > lo ? (points[4 * i + k] - lo) / (hi - lo) : 0.5;
    ctx.fillStyle = `hsl(${240 - 240 * f}, 70%, 45%)`;
    ctx.fillRect(canvas.width / 2 + scale * xy[2 * i], canvas.height / 2 - scale * xy[2 * i + 1], 1.5, 1.5);
  }
}

function run(status, f) {
  $(status).textContent = "working...";
  // let the message paint before blocking
  setTimeout(() => {
    try {
      const t0 = performance.now();
      const text = f();
      $(status).textContent = `${text} (${(performance.now() - t0).toFixed(0)} ms)`;
    } catch (e) {
      $(status).textContent = `error: ${e.message ?? e}`;
    }
  }, 10);
}

await init();

$("run-limit").onclick = () =>
  run("limit-status", () => {
    points = limit_set(Number($("necklace").value), Number($("epsilon").value), Number($("depth").value));
    draw();
    return `${points.length / 4} points`;
  });
$("angle").oninput = draw;
$("colour").onchange = draw;
$("run-validate").onclick = () => run("validate-out", () => validate_trefoil(Number($("tau").value)));
$("run-monodromy").onclick = () => run("monodromy-out", () => monodromy(Number($("radius").value)));
