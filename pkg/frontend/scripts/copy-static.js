// copy index.html into dist/ next to the bundle
const fs = require("fs");
const path = require("path");

const root = path.join(__dirname, "..");
fs.mkdirSync(path.join(root, "dist"), { recursive: true });
fs.copyFileSync(path.join(root, "index.html"), path.join(root, "dist", "index.html"));
console.log("dist/index.html written");
