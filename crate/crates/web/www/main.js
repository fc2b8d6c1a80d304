import init, { solve_1d, omega_hat_curves, solve_2d } from "./pkg/tsfem_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function frame(ctx, xs, ys, logx) {
  const fx = logx ? Math.log10 : (v) => v;
  const x0 = Math.min(...xs.map(fx)), x1 = Math.max(...xs.map(fx));
  let y0 = Math.min(...ys), y1 = Math.max(...ys);
  if (y1 - y0 < 1e-12) { y0 -= 1; y1 += 1; }
  const { width: w, height: h } = ctx.canvas, pad = 40;
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, 10, w - pad - 10, h - pad - 10);
  ctx.fillStyle = "#333";
  ctx.fillText(y1.toPrecision(3), 2, 18);
  ctx.fillText(y0.toPrecision(3), 2, h - pad);
  ctx.fillText(logx ? "1e" + x0.toFixed(0) : x0.toPrecision(3), pad, h - pad + 14);
  ctx.fillText(logx ? "1e" + x1.toFixed(0) : x1.toPrecision(3), w - 40, h - pad + 14);
  return (x, y) => [
    pad + ((fx(x) - x0) / (x1 - x0)) * (w - pad - 10),
    10 + ((y1 - y) / (y1 - y0)) * (h - pad - 10),
  ];
}

function line(ctx, map, xs, ys, color, dashed, markers) {
  ctx.strokeStyle = color;
  ctx.setLineDash(dashed ? [6, 4] : []);
  ctx.beginPath();
  xs.forEach((x, i) => {
    const [px, py] = map(x, ys[i]);
    i ? ctx.lineTo(px, py) : ctx.moveTo(px, py);
  });
  ctx.stroke();
  ctx.setLineDash([]);
  if (markers) {
    ctx.fillStyle = color;
    xs.forEach((x, i) => {
      const [px, py] = map(x, ys[i]);
      ctx.fillRect(px - 2, py - 2, 4, 4);
    });
  }
}

function show(id, f) {
  try {
    f();
    $(id).classList.remove("err");
  } catch (e) {
    $(id).textContent = String(e);
    $(id).classList.add("err");
  }
}

function run1d() {
  show("o1", () => {
    const r = JSON.parse(solve_1d($("m1").value, num("a1"), num("b1"), num("n1")));
    const ctx = $("c1").getContext("2d");
    const ys = [...r.exact.re, ...r.exact.im, ...r.nodes.re, ...r.nodes.im];
    const map = frame(ctx, r.exact.x, ys, false);
    line(ctx, map, r.exact.x, r.exact.re, "#36c", false, false);
    line(ctx, map, r.exact.x, r.exact.im, "#c33", false, false);
    line(ctx, map, r.nodes.x, r.nodes.re, "#36c", true, true);
    line(ctx, map, r.nodes.x, r.nodes.im, "#c33", true, true);
    $("o1").textContent =
      `${r.method}: relative L2 error² ${r.rel_err_sq.toExponential(3)}, ` +
      `${r.iterations} GMRES iterations${r.converged ? "" : " (not converged)"}`;
  });
}

function runOmega() {
  show("o2", () => {
    const r = JSON.parse(omega_hat_curves(num("b2"), 120));
    const ctx = $("c2").getContext("2d");
    const map = frame(ctx, r.alpha, [...r.exact_re, ...r.exact_im, ...r.approx_re, ...r.approx_im], true);
    line(ctx, map, r.alpha, r.exact_re, "#36c", false, false);
    line(ctx, map, r.alpha, r.exact_im, "#c33", false, false);
    line(ctx, map, r.alpha, r.approx_re, "#36c", true, false);
    line(ctx, map, r.alpha, r.approx_im, "#c33", true, false);
  });
}

function heat(canvas, n, values, lo, hi) {
  const ctx = canvas.getContext("2d");
  const cell = canvas.width / (n + 1);
  for (let j = 0; j <= n; j++) {
    for (let i = 0; i <= n; i++) {
      const t = Math.min(1, Math.max(0, (values[j * (n + 1) + i] - lo) / (hi - lo)));
      ctx.fillStyle = `rgb(${Math.round(255 * t)}, ${Math.round(80 + 100 * (1 - Math.abs(2 * t - 1)))}, ${Math.round(255 * (1 - t))})`;
      ctx.fillRect(i * cell, canvas.height - (j + 1) * cell, cell + 1, cell + 1);
    }
  }
}

function run2d() {
  $("o3").textContent = "solving...";
  setTimeout(() =>
    show("o3", () => {
      const r = JSON.parse(solve_2d($("m3").value, num("p3"), num("w3"), num("n3")));
      const all = [...r.re, ...r.exact_re];
      const lo = Math.min(...all), hi = Math.max(...all);
      heat($("c3"), r.n, r.re, lo, hi);
      heat($("c4"), r.n, r.exact_re, lo, hi);
      $("o3").textContent =
        `${r.method}: relative L2 error² ${r.rel_err_sq.toExponential(3)}, ${r.iterations} GMRES iterations, ` +
        `color range [${lo.toFixed(3)}, ${hi.toFixed(3)}]`;
    }), 10);
}

await init();
$("go1").onclick = run1d;
$("go2").onclick = runOmega;
$("go3").onclick = run2d;
run1d();
runOmega();
run2d();
