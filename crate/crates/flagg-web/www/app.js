// Wires the three panels to the wasm exports. Build the module first:
//   wasm-pack build crates/flagg-web --target web
// then serve this directory together with the generated pkg/ next to it.

import init, { compute, list_tableaux, perm_report } from "./pkg/flagg_web.js";

function el(id) {
  return document.getElementById(id);
}

function show(target, html) {
  el(target).innerHTML = html;
}

function escapeHtml(s) {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function errorBox(message) {
  return `<p class="error">${escapeHtml(message)}</p>`;
}

function pairList(pairs) {
  if (!pairs || pairs.length === 0) return "none";
  return pairs.map(([p, q]) => `(${p},${q})`).join(" ");
}

function onCompute(event) {
  event.preventDefault();
  const doc = JSON.parse(
    compute(el("compute-shape").value, el("compute-flag").value, el("compute-method").value)
  );
  if (doc.error) {
    show("compute-result", errorBox(doc.error));
    return;
  }
  show(
    "compute-result",
    `<p class="meta">${doc.terms} terms, method: ${escapeHtml(doc.method)}</p>
     <pre>${escapeHtml(doc.text)}</pre>
     <details><summary>LaTeX</summary><pre>${escapeHtml(doc.latex)}</pre></details>`
  );
}

function onTableaux(event) {
  event.preventDefault();
  const limit = Number(el("tableaux-limit").value) || 25;
  const doc = JSON.parse(
    list_tableaux(el("tableaux-shape").value, el("tableaux-flag").value, limit)
  );
  if (doc.error) {
    show("tableaux-result", errorBox(doc.error));
    return;
  }
  const items = doc.shown.map((t) => `<li><code>${escapeHtml(t)}</code></li>`).join("");
  const more =
    doc.count > doc.shown.length
      ? `<p class="meta">… and ${doc.count - doc.shown.length} more</p>`
      : "";
  show(
    "tableaux-result",
    `<p class="meta">${doc.count} tableaux</p><ol>${items}</ol>${more}`
  );
}

function onPerm(event) {
  event.preventDefault();
  const doc = JSON.parse(perm_report(el("perm-input").value, el("perm-poly").checked));
  if (doc.error) {
    show("perm-result", errorBox(doc.error));
    return;
  }
  const rows = [
    ["length", doc.length],
    ["code", doc.code.join(",")],
    [
      "vexillary",
      doc.vexillary ? "yes" : `no — 2143 pattern at ${doc.pattern_2143.join(",")}`,
    ],
    ["diagram", pairList(doc.diagram)],
    ["essential set", pairList(doc.essential_set)],
  ];
  if (doc.lambda) {
    rows.push(["λ", doc.lambda.length ? doc.lambda.join(",") : "empty"]);
    rows.push(["f", doc.flag.length ? doc.flag.join(",") : "empty"]);
  }
  if (doc.flagging_set) {
    rows.push(["flagging set", pairList(doc.flagging_set)]);
  }
  const table = rows
    .map(([k, v]) => `<tr><th>${k}</th><td>${escapeHtml(String(v))}</td></tr>`)
    .join("");
  const poly = doc.polynomial
    ? `<p class="meta">${doc.polynomial.terms} terms</p>
       <pre>${escapeHtml(doc.polynomial.text)}</pre>`
    : "";
  show("perm-result", `<table>${table}</table>${poly}`);
}

async function main() {
  await init();
  el("compute-form").addEventListener("submit", onCompute);
  el("tableaux-form").addEventListener("submit", onTableaux);
  el("perm-form").addEventListener("submit", onPerm);
}

main();
