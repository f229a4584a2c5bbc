// Demo page wiring.  All mathematics happens in the wasm module; this file
// only renders its JSON answers.

import init, {
  weight_curve,
  construct_family,
  analyze_family,
} from "./pkg/setfam_wasm.js";

await init();

const $ = (id) => document.getElementById(id);

// ---------------------------------------------------------------- weight curve

function drawCurve(nMax) {
  const rows = JSON.parse(weight_curve(nMax));
  const canvas = $("curve");
  const ctx = canvas.getContext("2d");
  const { width: W, height: H } = canvas;
  ctx.clearRect(0, 0, W, H);

  const margin = { l: 90, r: 30, t: 20, b: 50 };
  const ys = rows.map((r) => r.approx);
  const yMin = Math.min(...ys) - 0.002;
  const yMax = 0.2525;
  const x = (n) => margin.l + ((n - 7) / (nMax - 7)) * (W - margin.l - margin.r);
  const y = (v) => margin.t + (1 - (v - yMin) / (yMax - yMin)) * (H - margin.t - margin.b);

  ctx.font = "22px system-ui";
  ctx.textAlign = "right";
  ctx.textBaseline = "middle";

  // Horizontal grid and labels.
  ctx.strokeStyle = "#2c3642";
  ctx.fillStyle = "#8a96a4";
  for (let v = Math.ceil(yMin * 500) / 500; v <= yMax; v += 0.002) {
    ctx.beginPath();
    ctx.moveTo(margin.l, y(v));
    ctx.lineTo(W - margin.r, y(v));
    ctx.stroke();
    ctx.fillText(v.toFixed(3), margin.l - 10, y(v));
  }
  ctx.textAlign = "center";
  ctx.textBaseline = "top";
  const xStep = nMax > 240 ? 50 : nMax > 120 ? 20 : 10;
  for (let n = 10; n <= nMax; n += xStep) {
    ctx.fillText(String(n), x(n), H - margin.b + 12);
  }

  // The 1/4 asymptote.
  ctx.strokeStyle = "#e5c07b";
  ctx.setLineDash([8, 6]);
  ctx.beginPath();
  ctx.moveTo(margin.l, y(0.25));
  ctx.lineTo(W - margin.r, y(0.25));
  ctx.stroke();
  ctx.setLineDash([]);
  ctx.fillStyle = "#e5c07b";
  ctx.textAlign = "left";
  ctx.fillText("1/4", W - margin.r - 40, y(0.25) - 26);

  // The Fn:7 level — the long-reigning champion.
  const w7 = rows[0].approx;
  ctx.strokeStyle = "#59c47e";
  ctx.setLineDash([2, 5]);
  ctx.beginPath();
  ctx.moveTo(margin.l, y(w7));
  ctx.lineTo(W - margin.r, y(w7));
  ctx.stroke();
  ctx.setLineDash([]);
  ctx.fillStyle = "#59c47e";
  ctx.fillText("weight(Fn:7) = 29/2^7", margin.l + 12, y(w7) - 26);

  // The curve itself.
  ctx.strokeStyle = "#5fb4ef";
  ctx.lineWidth = 3;
  ctx.beginPath();
  rows.forEach((r, i) => (i ? ctx.lineTo(x(r.n), y(r.approx)) : ctx.moveTo(x(r.n), y(r.approx))));
  ctx.stroke();
  ctx.lineWidth = 1;

  // Mark the first n whose weight beats Fn:7.
  const cross = rows.find((r, i) => i > 0 && r.approx > w7);
  if (cross) {
    ctx.fillStyle = "#e06c75";
    ctx.beginPath();
    ctx.arc(x(cross.n), y(cross.approx), 7, 0, 2 * Math.PI);
    ctx.fill();
    ctx.textAlign = "center";
    ctx.fillText(`n = ${cross.n}`, x(cross.n), y(cross.approx) + 14);
  }

  const minRow = rows.reduce((a, b) => (b.approx < a.approx ? b : a));
  $("curve-caption").textContent =
    `Minimum at n = ${minRow.n} (${minRow.num}/2^${minRow.exp} ≈ ` +
    `${minRow.approx.toFixed(7)}); ` +
    (cross
      ? `first value above weight(Fn:7) at n = ${cross.n}.`
      : `no value above weight(Fn:7) in this range — extend the range to 73+.`);
}

const slider = $("nmax");
const redraw = () => {
  $("nmax-label").textContent = slider.value;
  drawCurve(Number(slider.value));
};
slider.addEventListener("input", redraw);
redraw();

// ----------------------------------------------------------------- constructor

function chipList(members, cap = 400) {
  const shown = members.slice(0, cap);
  const chips = shown
    .map((s) => `<span class="chip">{${s.join(",")}}</span>`)
    .join("");
  const more =
    members.length > cap
      ? `<span class="note">… and ${members.length - cap} more</span>`
      : "";
  return `<div class="chips">${chips}${more}</div>`;
}

function weightText(w) {
  return `${w.num}/2^${w.exp} ≈ ${w.approx.toPrecision(7)}`;
}

$("build").addEventListener("click", () => {
  const out = $("construct-out");
  const v = JSON.parse(construct_family($("label").value.trim()));
  if (!v.ok) {
    out.innerHTML = `<p class="err">${v.error}</p>`;
    return;
  }
  out.innerHTML = `
    <table class="kv">
      <tr><td>ground set</td><td>[${v.n}]</td></tr>
      <tr><td>sets</td><td>${v.sets}</td></tr>
      <tr><td>weight</td><td>${weightText(v.weight)}</td></tr>
    </table>
    ${v.members ? chipList(v.members) : '<p class="note">ground set too large to list members</p>'}`;
});

// -------------------------------------------------------------------- analyzer

function badge(label, on) {
  return `<span class="badge ${on ? "on" : "off"}">${label}: ${on ? "yes" : "no"}</span>`;
}

$("analyze").addEventListener("click", () => {
  const out = $("analyze-out");
  const v = JSON.parse(analyze_family($("family").value));
  if (!v.ok) {
    out.innerHTML = `<p class="err">${v.error}</p>`;
    return;
  }
  const pairs = v.sharp_pairs
    .map(
      (p) =>
        `<span class="chip">{${p.members[0].join(",")}} , {${p.members[1].join(",")}} → (${p.i},${p.j})</span>`
    )
    .join(" ");
  const triples = v.sharp_triples
    .map((t) => `<span class="chip">${t.members.map((m) => `{${m.join(",")}}`).join(" , ")}</span>`)
    .join(" ");
  const steps = (v.transform.steps || [])
    .map((s) =>
      s.op === "shorten"
        ? `<li>shorten {${s.generator.join(",")}} → {${s.result.join(",")}}</li>`
        : `<li>remove {${s.generator.join(",")}}</li>`
    )
    .join("");
  const transform = v.transform.eligible
    ? `<p>after: ${v.transform.after_sets} sets, weight ${weightText(v.transform.after_weight)}</p>
       <ol class="out">${steps || "<li>no generator uses the last element — identity</li>"}</ol>`
    : `<p class="err">not applicable: ${v.transform.reason}</p>`;

  out.innerHTML = `
    <table class="kv">
      <tr><td>ground set</td><td>[${v.n}]</td></tr>
      <tr><td>sets</td><td>${v.sets} (up-closure: ${v.closure_sets})</td></tr>
      <tr><td>weight</td><td>${weightText(v.weight)}</td></tr>
    </table>
    <div>
      ${badge("3-wise 1-intersecting", v.intersecting_3wise_1)}
      ${badge("2-wise 3-intersecting", v.intersecting_2wise_3)}
      ${badge("up-set", v.up_set)}
      ${badge("left-compressed", v.left_compressed)}
      ${badge("almost-trivial", v.almost_trivial)}
    </div>
    <p class="note" style="margin-bottom:.2rem">generators of the up-closure</p>
    <div class="chips">${v.generators.map((g) => `<span class="chip">{${g.join(",")}}</span>`).join("")}</div>
    <p class="note" style="margin-bottom:.2rem">sharp pairs</p>
    <div class="chips">${pairs || '<span class="note">none</span>'}</div>
    <p class="note" style="margin-bottom:.2rem">sharp triples</p>
    <div class="chips">${triples || '<span class="note">none</span>'}</div>
    <p class="note" style="margin-bottom:.2rem">split-and-shorten transform (on the up-closure)</p>
    ${transform}`;
});
