import init, { explore_family, shear, algebra_info } from "./pkg/shearlab_wasm.js";

const $ = (id) => document.getElementById(id);

// slider values as exact rationals: halves become p/2
function rational(v) {
  const x = Number(v);
  return Number.isInteger(x) ? String(x) : `${Math.round(x * 2)}/2`;
}

function mark(ok) {
  return `<span class="${ok ? "pass" : "fail"}">${ok ? "yes" : "no"}</span>`;
}

function row(label, value) {
  return `<tr><td>${label}</td><td>${value}</td></tr>`;
}

function algebraText(a) {
  return `<code>${a.salamon ?? a.d.join(", ")}</code>`;
}

function updateFamily() {
  const l = rational($("lambda").value);
  const m = rational($("mu").value);
  $("lv").textContent = l;
  $("mv").textContent = m;
  const r = JSON.parse(explore_family(l, m));
  if (r.error) {
    $("family").innerHTML = row("error", r.error);
    return;
  }
  $("family").innerHTML = [
    row("g", algebraText(r.g)),
    row("η = −X⌟dα", `<code>${r.eta}</code>`),
    row("shear valid", mark(r.valid)),
    row("h", algebraText(r.h)),
    row("dψ = 0 on g", mark(r.psi_closed_on_g)),
    row("d<sub>S</sub>ψ", `<code>${r.ds_psi}</code>`),
    row("dψ = 0 on h", mark(r.psi_closed_on_h)),
    row("g almost abelian", mark(r.g_almost_abelian)),
    row("h almost abelian", mark(r.h_almost_abelian)),
  ].join("");
}

function runShear() {
  const r = JSON.parse(shear($("alg").value, $("x").value, $("alpha").value, $("f0").value, $("a").value));
  if (r.error) {
    $("shear-out").innerHTML = `<p class="fail">${r.error}</p>`;
    return;
  }
  const rows = r.conditions.map((c) =>
    row(`${c.condition}${c.required ? "" : " (geometric)"}`,
        c.passed ? mark(true) : `${mark(false)} <code>${c.residual ?? ""}</code>`));
  rows.push(row("η₀", `<code>${r.eta0}</code>`), row("ν", `<code>${r.nu}</code>`));
  rows.push(row("result", r.sheared ? algebraText(r.sheared) : '<span class="fail">invalid</span>'));
  $("shear-out").innerHTML = `<table>${rows.join("")}</table>`;
}

function runInfo() {
  $("info-out").textContent = JSON.stringify(JSON.parse(algebra_info($("info-alg").value)), null, 2);
}

await init();
$("lambda").addEventListener("input", updateFamily);
$("mu").addEventListener("input", updateFamily);
$("go").addEventListener("click", runShear);
$("info-go").addEventListener("click", runInfo);
updateFamily();
runShear();
runInfo();
