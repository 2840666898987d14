import init, { bundled_examples, analyze, e2_chart_svg, base_chart_svg, polygon_example } from "./pkg/toric_ko_web.js";

const $ = (id) => document.getElementById(id);

function groups(table) {
  if (!table) return "";
  return table.entries.map((e) => `  ${String(e.degree).padStart(3)}  ${groupString(e)}`).join("\n");
}

function groupString(e) {
  const parts = [];
  if (e.free === 1) parts.push("Z");
  else if (e.free > 1) parts.push(`Z^${e.free}`);
  if (e.two === 1) parts.push("Z/2");
  else if (e.two > 1) parts.push(`(Z/2)^${e.two}`);
  return parts.length ? parts.join(" ⊕ ") : "0";
}

function runAnalysis() {
  $("error").textContent = "";
  const text = $("spec").value;
  try {
    const r = JSON.parse(analyze(text)).results;
    const lines = [
      `f = (${r.f_vector.join(", ")})   h = (${(r.h_vector ?? []).join(", ")})`,
      `H^* : ${r.cohomology.map((c) => `H^${c.degree} = ${c.integral}`).join(", ")}`,
      `spin: ${!r.spin.computed ? r.spin.note : r.spin.spin ? "yes" : "no"}`,
      `A(1) splitting: ${r.decomposition.formula}`,
      r.collapse.note,
    ];
    const table = r.ko_reduced ?? r.e2_bound;
    lines.push(r.ko_reduced ? "reduced ko_*:" : "E2 bound on ko_*:");
    lines.push(groups(table));
    $("summary").textContent = lines.join("\n");
    $("e2").innerHTML = e2_chart_svg(text);
  } catch (err) {
    $("summary").textContent = "";
    $("e2").innerHTML = "";
    $("error").textContent = String(err);
  }
}

function drawBase() {
  const kind = document.querySelector("input[name=kind]:checked").value;
  try {
    $("base").innerHTML = base_chart_svg(kind, Number($("stems").value), Number($("filt").value));
  } catch (err) {
    $("base").textContent = String(err);
  }
}

await init();

const examples = JSON.parse(bundled_examples());
for (const ex of examples) {
  const opt = document.createElement("option");
  opt.value = ex.name;
  opt.textContent = `${ex.name}: ${ex.description}`;
  $("example").append(opt);
}
$("example").addEventListener("change", () => {
  $("spec").value = examples.find((e) => e.name === $("example").value).text;
  runAnalysis();
});
$("poly").addEventListener("click", () => {
  try {
    $("spec").value = polygon_example(Number($("poly-m").value), Number($("poly-seed").value));
    runAnalysis();
  } catch (err) {
    $("error").textContent = String(err);
  }
});
$("run").addEventListener("click", runAnalysis);
for (const el of document.querySelectorAll("input[name=kind], #stems, #filt")) {
  el.addEventListener("change", drawBase);
}

$("example").value = "cube";
$("spec").value = examples.find((e) => e.name === "cube").text;
runAnalysis();
drawBase();
