import init, { rabi_spectrum, two_qubit_spectrum, transfer_dynamics } from "./pkg/paritybus_wasm.js";

const EVEN = "#c0392b";
const ODD = "#d4a017";

const num = (id) => Number(document.getElementById(id).value);
const int = (id) => Math.round(num(id));
const el = (id) => document.getElementById(id);

function setup(canvas) {
  const dpr = window.devicePixelRatio || 1;
  const w = canvas.clientWidth;
  const h = canvas.clientHeight;
  canvas.width = w * dpr;
  canvas.height = h * dpr;
  const ctx = canvas.getContext("2d");
  ctx.setTransform(dpr, 0, 0, dpr, 0, 0);
  ctx.clearRect(0, 0, w, h);
  return { ctx, w, h };
}

function axes(canvas, xr, yr, xlabel, ylabel) {
  const { ctx, w, h } = setup(canvas);
  const m = { l: 60, r: 12, t: 10, b: 34 };
  const sx = (x) => m.l + ((x - xr[0]) / (xr[1] - xr[0])) * (w - m.l - m.r);
  const sy = (y) => h - m.b - ((y - yr[0]) / (yr[1] - yr[0])) * (h - m.t - m.b);
  ctx.strokeStyle = "#888";
  ctx.fillStyle = "#444";
  ctx.font = "11px system-ui";
  ctx.strokeRect(m.l, m.t, w - m.l - m.r, h - m.t - m.b);
  for (let i = 0; i <= 4; i++) {
    const x = xr[0] + (i / 4) * (xr[1] - xr[0]);
    const y = yr[0] + (i / 4) * (yr[1] - yr[0]);
    ctx.fillText(x.toPrecision(3), sx(x) - 12, h - m.b + 14);
    ctx.fillText(y.toPrecision(3), 4, sy(y) + 4);
  }
  ctx.fillText(xlabel, w / 2, h - 4);
  ctx.save();
  ctx.translate(12, h / 2);
  ctx.rotate(-Math.PI / 2);
  ctx.fillText(ylabel, 0, 0);
  ctx.restore();
  return { ctx, sx, sy };
}

function range(values) {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  const pad = 0.04 * (hi - lo || 1);
  return [lo - pad, hi + pad];
}

function drawSpectrum(canvas, s, xlabel) {
  const grid = s.grid;
  const e = s.energies;
  const p = s.parities;
  const k = s.levels;
  const { ctx, sx, sy } = axes(canvas, [grid[0], grid[grid.length - 1]], range(e), xlabel, "E");
  for (let i = 0; i < grid.length; i++) {
    for (let j = 0; j < k; j++) {
      ctx.fillStyle = p[i * k + j] > 0 ? EVEN : ODD;
      ctx.fillRect(sx(grid[i]) - 1.5, sy(e[i * k + j]) - 1.5, 3, 3);
    }
  }
  const c = s.crossings;
  ctx.strokeStyle = "#2c3e50";
  for (let i = 0; i < c.length; i += 3) {
    ctx.beginPath();
    ctx.arc(sx(c[i]), sy(c[i + 2]), 6, 0, 2 * Math.PI);
    ctx.stroke();
  }
  return c;
}

function crossingReport(c, name) {
  if (c.length === 0) return "no avoided crossings detected";
  const rows = [];
  for (let i = 0; i < c.length; i += 3) {
    rows.push(`${name} = ${c[i].toFixed(5)}  gap = ${c[i + 1].toExponential(4)}  E = ${c[i + 2].toFixed(5)}`);
  }
  return rows.join("\n");
}

function guard(out, f) {
  const t0 = performance.now();
  try {
    const msg = f();
    out.textContent = `${msg}\n(${(performance.now() - t0).toFixed(0)} ms; red even, yellow odd parity)`;
  } catch (e) {
    out.textContent = `error: ${e.message ?? e}`;
  }
}

function runRabi() {
  guard(el("r-out"), () => {
    const s = rabi_spectrum(num("r-wp"), num("r-gmax"), int("r-pts"), int("r-levels"), int("r-nf"));
    const c = drawSpectrum(el("r-plot"), s, "g_p");
    return crossingReport(c, "g_p");
  });
}

function runTwoQubit() {
  guard(el("s-out"), () => {
    const identical = el("s-id").checked;
    const s = two_qubit_spectrum(
      num("s-wp"), num("s-gp"), num("s-g"), num("s-wq1"), identical,
      num("s-a"), num("s-b"), int("s-pts"), int("s-levels"), int("s-nf"),
    );
    const name = identical ? "Δ" : "ω_q2";
    const c = drawSpectrum(el("s-plot"), s, name);
    return crossingReport(c, name);
  });
}

function runTransfer() {
  guard(el("t-out"), () => {
    const r = transfer_dynamics(num("t-wp"), num("t-gp"), num("t-wq"), num("t-g"), num("t-per"), int("t-pts"), int("t-nf"));
    const t = r.times;
    const { ctx, sx, sy } = axes(el("t-plot"), [t[0], t[t.length - 1]], [0, 1.05], "t ω_cav", "⟨σ₂⁺σ₂⁻⟩");
    for (const [v, color] of [[r.full, "#2f6fb0"], [r.effective, "#c0392b"]]) {
      ctx.strokeStyle = color;
      ctx.beginPath();
      for (let i = 0; i < t.length; i++) {
        const f = i === 0 ? "moveTo" : "lineTo";
        ctx[f](sx(t[i]), sy(v[i]));
      }
      ctx.stroke();
    }
    let dev = 0;
    for (let i = 0; i < t.length; i++) dev = Math.max(dev, Math.abs(r.full[i] - r.effective[i]));
    return `2J_eff = ${r.two_j_eff.toExponential(5)}  max |full − effective| = ${dev.toFixed(4)}\nblue full, red effective`;
  });
}

await init();
el("r-go").onclick = runRabi;
el("s-go").onclick = runTwoQubit;
el("t-go").onclick = runTransfer;
runRabi();
runTransfer();
