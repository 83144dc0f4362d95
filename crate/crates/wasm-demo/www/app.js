import init, {
  interval_diagram,
  point_report,
  cone_series,
  straighten_monomial,
} from "./pkg/richardson_wasm_demo.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";

let current = null;

function call(f, ...args) {
  try {
    return { ok: JSON.parse(f(...args)) };
  } catch (e) {
    return { err: String(e) };
  }
}

function show(el, text, isError) {
  el.textContent = text;
  el.classList.toggle("error", !!isError);
}

function svgEl(name, attrs) {
  const el = document.createElementNS(SVG, name);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, v);
  return el;
}

function layout(nodes) {
  const rows = new Map();
  for (const n of nodes) {
    if (!rows.has(n.length)) rows.set(n.length, []);
    rows.get(n.length).push(n);
  }
  const lengths = [...rows.keys()].sort((a, b) => a - b);
  const lo = lengths[0];
  const hi = lengths[lengths.length - 1];
  const pos = new Map();
  for (const l of lengths) {
    const row = rows.get(l);
    const y = hi === lo ? 240 : 440 - ((l - lo) / (hi - lo)) * 400;
    row.forEach((n, i) => pos.set(n.id, { x: ((i + 1) * 700) / (row.length + 1), y }));
  }
  return pos;
}

function draw(diagram) {
  const svg = $("hasse");
  svg.replaceChildren();
  const pos = layout(diagram.nodes);
  for (const [a, b] of diagram.edges) {
    const p = pos.get(a);
    const q = pos.get(b);
    svg.appendChild(svgEl("line", { x1: p.x, y1: p.y, x2: q.x, y2: q.y }));
  }
  for (const n of diagram.nodes) {
    const p = pos.get(n.id);
    const g = svgEl("g", { class: "node", "data-id": n.id, transform: `translate(${p.x},${p.y})` });
    g.appendChild(svgEl("circle", { r: 18 }));
    const label = svgEl("text", { dy: 4 });
    label.textContent = n.id;
    g.appendChild(label);
    g.addEventListener("click", () => inspect(n.id));
    svg.appendChild(g);
  }
  colour();
}

// smooth/singular colouring, one report per node
function colour() {
  for (const g of $("hasse").querySelectorAll(".node")) {
    const r = call(point_report, current.gr, current.w, current.v, g.dataset.id);
    if (r.ok) g.classList.add(r.ok.smooth ? "smooth" : "singular");
  }
}

function inspect(tau) {
  for (const g of $("hasse").querySelectorAll(".node")) {
    g.classList.toggle("selected", g.dataset.id === tau);
  }
  const r = call(point_report, current.gr, current.w, current.v, tau);
  if (r.err) return show($("point"), r.err, true);
  const p = r.ok;
  const m = p.multiplicity;
  show(
    $("point"),
    [
      `tau = ${p.tau}`,
      `dim ${p.dim}, tangent space dim ${p.tangent_dim}`,
      `smooth: ${p.smooth} (X_w ${p.schubert_smooth}, X^v ${p.opposite_smooth})`,
      `multiplicity: ${m.recursive} recursive, ${m.product} product,`,
      `  ${m.determinantal} determinant, ${m.oracle} tangent cone`,
      `directions: ${p.tangent_directions.join("  ")}`,
    ].join("\n"),
  );
  const c = call(cone_series, current.gr, current.w, current.v, tau, 10);
  if (c.err) return show($("cone"), c.err, true);
  show($("cone"), c.ok.series.map((h, r) => `r=${r}  ${h}`).join("\n"));
}

function drawVariety(ev) {
  if (ev) ev.preventDefault();
  current = { gr: $("gr").value, w: $("w").value, v: $("v").value };
  const r = call(interval_diagram, current.gr, current.w, current.v);
  if (r.err) {
    $("hasse").replaceChildren();
    return show($("summary"), r.err, true);
  }
  const d = r.ok;
  show($("summary"), `${d.variety}: dim ${d.dim}, degree ${d.degree}, P(m) = ${d.hilbert}`);
  draw(d);
  show($("point"), "-");
  show($("cone"), "-");
}

function doStraighten(ev) {
  ev.preventDefault();
  const r = call(straighten_monomial, $("gr").value, $("mono").value);
  if (r.err) return show($("straightened"), r.err, true);
  show($("straightened"), `${r.ok.input}\n= ${r.ok.standard}`);
}

await init();
$("variety").addEventListener("submit", drawVariety);
$("straighten").addEventListener("submit", doStraighten);
drawVariety();
