/**
 * In-page snapshot extractor.
 *
 * Walks the live DOM in preorder and serializes the tree, the audited
 * computed-style subset (absolute px, rgba), bounding boxes, per-line text
 * rectangles, and optionally dominant screenshot colors into the snapshot
 * JSON format consumed by the designlint auditor.
 *
 * This file is deliberately self-contained (no imports) so the compiled
 * output can run as a devtools snippet or bookmarklet; see
 * scripts/build-snippet.mjs.
 */

export interface RgbaColor {
  r: number;
  g: number;
  b: number;
  a: number;
}

export interface Box {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface Edges {
  top: number;
  right: number;
  bottom: number;
  left: number;
}

export interface StyleSubset {
  fontSizePx: number;
  fontFamilies: string[];
  lineHeightPx?: number;
  color: RgbaColor;
  backgroundColor: RgbaColor;
  borderColor?: RgbaColor;
  textAlign: string;
  margin: Edges;
  padding: Edges;
  display: string;
  opacity: number;
}

export interface SnapshotNode {
  id: string;
  tag: string;
  classes: string[];
  text?: string;
  style: StyleSubset;
  box?: Box;
  lineBoxes?: Box[];
  children: SnapshotNode[];
}

export interface Snapshot {
  source: string;
  viewport: { width: number; height: number };
  root: SnapshotNode;
  ocrLines?: unknown[];
  screenshotColors?: RgbaColor[];
}

export interface ExtractionOptions {
  includeLineBoxes?: boolean;
  includeScreenshotColors?: boolean;
  /** Canvas holding a page screenshot; required for screenshot colors. */
  screenshotCanvas?: HTMLCanvasElement;
  maxDepth?: number;
  viewport?: { width: number; height: number };
}

export interface ExtractionResult {
  snapshot: Snapshot;
  errors: string[];
}

// --- defaults mirroring common user-agent stylesheets -----------------------
// In a real browser getComputedStyle always returns concrete values and these
// fallbacks never fire; they exist for non-rendering DOM implementations.

const DEFAULT_FONT_FAMILY = "Times New Roman";
const DEFAULT_FONT_SIZE = 16;

const HEADING_SIZES: Record<string, number> = {
  h1: 32, h2: 24, h3: 18.72, h4: 16, h5: 13.28, h6: 10.72,
};

const DEFAULT_MARGINS: Record<string, Edges> = {
  body: { top: 8, right: 8, bottom: 8, left: 8 },
  p: { top: 16, right: 0, bottom: 16, left: 0 },
  h1: { top: 21.44, right: 0, bottom: 21.44, left: 0 },
  h2: { top: 19.92, right: 0, bottom: 19.92, left: 0 },
  h3: { top: 18.72, right: 0, bottom: 18.72, left: 0 },
  h4: { top: 21.28, right: 0, bottom: 21.28, left: 0 },
  h5: { top: 22.17, right: 0, bottom: 22.17, left: 0 },
  h6: { top: 24.97, right: 0, bottom: 24.97, left: 0 },
  ul: { top: 16, right: 0, bottom: 16, left: 0 },
  ol: { top: 16, right: 0, bottom: 16, left: 0 },
  blockquote: { top: 16, right: 40, bottom: 16, left: 40 },
  figure: { top: 16, right: 40, bottom: 16, left: 40 },
};

const DEFAULT_PADDINGS: Record<string, Edges> = {
  ul: { top: 0, right: 0, bottom: 0, left: 40 },
  ol: { top: 0, right: 0, bottom: 0, left: 40 },
};

const INLINE_TAGS = new Set([
  "a", "span", "em", "strong", "b", "i", "u", "small", "code", "abbr",
  "sub", "sup", "mark", "q", "cite", "time", "label",
]);
const INLINE_BLOCK_TAGS = new Set(["img", "button", "input", "select", "textarea"]);
const UNDISPLAYED_TAGS = new Set(["head", "title", "style", "script", "link", "meta"]);

// Keyword colors an extractor may still meet in non-browser DOMs; real
// browsers always emit rgb()/rgba() from getComputedStyle.
const KEYWORD_COLORS: Record<string, [number, number, number]> = {
  black: [0, 0, 0], white: [255, 255, 255], red: [255, 0, 0],
  green: [0, 128, 0], blue: [0, 0, 255], yellow: [255, 255, 0],
  grey: [128, 128, 128], gray: [128, 128, 128], silver: [192, 192, 192],
  orange: [255, 165, 0], purple: [128, 0, 128], navy: [0, 0, 128],
  teal: [0, 128, 128], maroon: [128, 0, 0], olive: [128, 128, 0],
  aqua: [0, 255, 255], cyan: [0, 255, 255], fuchsia: [255, 0, 255],
  magenta: [255, 0, 255], lime: [0, 255, 0],
};

export function parseCssColor(value: string): RgbaColor | null {
  const text = (value || "").trim().toLowerCase();
  if (!text) return null;
  if (text === "transparent") return { r: 0, g: 0, b: 0, a: 0 };
  if (text in KEYWORD_COLORS) {
    const [r, g, b] = KEYWORD_COLORS[text];
    return { r, g, b, a: 1 };
  }
  const hex = /^#([0-9a-f]{3,8})$/.exec(text);
  if (hex) {
    let digits = hex[1];
    if (digits.length === 3 || digits.length === 4) {
      digits = digits.split("").map((d) => d + d).join("");
    }
    if (digits.length === 6) digits += "ff";
    if (digits.length !== 8) return null;
    return {
      r: parseInt(digits.slice(0, 2), 16),
      g: parseInt(digits.slice(2, 4), 16),
      b: parseInt(digits.slice(4, 6), 16),
      a: Math.round((parseInt(digits.slice(6, 8), 16) / 255) * 10000) / 10000,
    };
  }
  const fn = /^(rgba?|hsla?)\(([^)]*)\)$/.exec(text);
  if (fn) {
    const parts = fn[2].split(/[,\s/]+/).filter(Boolean);
    if (fn[1].startsWith("rgb") && parts.length >= 3) {
      const channel = (p: string) =>
        p.endsWith("%") ? Math.round((parseFloat(p) * 255) / 100) : Math.round(parseFloat(p));
      const alpha = parts.length > 3
        ? (parts[3].endsWith("%") ? parseFloat(parts[3]) / 100 : parseFloat(parts[3]))
        : 1;
      return {
        r: clamp8(channel(parts[0])),
        g: clamp8(channel(parts[1])),
        b: clamp8(channel(parts[2])),
        a: Math.max(0, Math.min(1, alpha)),
      };
    }
    if (fn[1].startsWith("hsl") && parts.length >= 3) {
      const h = ((parseFloat(parts[0]) % 360) + 360) % 360;
      const s = parseFloat(parts[1]) / 100;
      const l = parseFloat(parts[2]) / 100;
      const alpha = parts.length > 3 ? parseFloat(parts[3]) : 1;
      const [r, g, b] = hslToRgb(h, s, l);
      return { r, g, b, a: Math.max(0, Math.min(1, alpha)) };
    }
  }
  return null;
}

function clamp8(v: number): number {
  return Math.max(0, Math.min(255, v));
}

function hslToRgb(h: number, s: number, l: number): [number, number, number] {
  const c = (1 - Math.abs(2 * l - 1)) * s;
  const x = c * (1 - Math.abs(((h / 60) % 2) - 1));
  const m = l - c / 2;
  let rgb: [number, number, number];
  if (h < 60) rgb = [c, x, 0];
  else if (h < 120) rgb = [x, c, 0];
  else if (h < 180) rgb = [0, c, x];
  else if (h < 240) rgb = [0, x, c];
  else if (h < 300) rgb = [x, 0, c];
  else rgb = [c, 0, x];
  return [
    Math.round((rgb[0] + m) * 255),
    Math.round((rgb[1] + m) * 255),
    Math.round((rgb[2] + m) * 255),
  ];
}

function splitFamilies(value: string): string[] {
  return value
    .split(",")
    .map((part) => part.trim().replace(/^['"]|['"]$/g, ""))
    .filter(Boolean);
}

function normalizeText(raw: string): string {
  return raw.replace(/\s+/g, " ").trim();
}

function defaultDisplay(tag: string): string {
  if (UNDISPLAYED_TAGS.has(tag)) return "none";
  if (tag === "li") return "list-item";
  if (INLINE_TAGS.has(tag)) return "inline";
  if (INLINE_BLOCK_TAGS.has(tag)) return "inline-block";
  return "block";
}

interface InheritedContext {
  fontSize: number;
  families: string[];
  lineHeight: number | undefined;
  color: RgbaColor;
  textAlign: string;
}

const ROOT_CONTEXT: InheritedContext = {
  fontSize: DEFAULT_FONT_SIZE,
  families: [DEFAULT_FONT_FAMILY],
  lineHeight: undefined,
  color: { r: 0, g: 0, b: 0, a: 1 },
  textAlign: "left",
};

function edgesFrom(
  cs: CSSStyleDeclaration,
  kind: "margin" | "padding",
  tag: string,
  errors: string[],
  label: string,
): Edges {
  const fallback = (kind === "margin" ? DEFAULT_MARGINS : DEFAULT_PADDINGS)[tag] ?? {
    top: 0, right: 0, bottom: 0, left: 0,
  };
  const out: Edges = { ...fallback };
  for (const side of ["top", "right", "bottom", "left"] as const) {
    const prop = kind + side.charAt(0).toUpperCase() + side.slice(1);
    const raw = (cs as unknown as Record<string, string>)[prop];
    if (!raw) continue;
    const parsed = parseFloat(raw);
    if (Number.isNaN(parsed)) continue;
    if (parsed < 0) {
      errors.push(`negative ${kind}-${side} (${parsed}px) on ${label} clamped to 0`);
      out[side] = 0;
    } else {
      out[side] = parsed;
    }
  }
  return out;
}

function resolveStyle(
  element: Element,
  view: Window | typeof globalThis,
  context: InheritedContext,
  errors: string[],
  label: string,
): { style: StyleSubset; next: InheritedContext } {
  const tag = element.tagName.toLowerCase();
  let cs: CSSStyleDeclaration;
  try {
    cs = (view as Window).getComputedStyle(element);
  } catch (err) {
    errors.push(`getComputedStyle failed on ${label}: ${String(err)}`);
    cs = {} as CSSStyleDeclaration;
  }

  let fontSize = parseFloat(cs.fontSize || "");
  if (Number.isNaN(fontSize) || fontSize <= 0) {
    fontSize = HEADING_SIZES[tag] ?? context.fontSize;
  }

  const families = cs.fontFamily ? splitFamilies(cs.fontFamily) : context.families;

  let lineHeight: number | undefined;
  const rawLineHeight = (cs.lineHeight || "").trim();
  if (rawLineHeight && rawLineHeight !== "normal") {
    const value = parseFloat(rawLineHeight);
    if (!Number.isNaN(value)) {
      lineHeight = rawLineHeight.endsWith("px") ? value : value * fontSize;
    }
  } else if (rawLineHeight === "normal" || !rawLineHeight) {
    lineHeight = context.lineHeight !== undefined && !rawLineHeight
      ? context.lineHeight
      : 1.2 * fontSize;
  }
  if (lineHeight === undefined) lineHeight = 1.2 * fontSize;

  const color = parseCssColor(cs.color || "") ?? context.color;
  const backgroundColor = parseCssColor(cs.backgroundColor || "") ?? { r: 0, g: 0, b: 0, a: 0 };
  const borderColor =
    parseCssColor((cs as unknown as Record<string, string>).borderTopColor || cs.borderColor || "")
    ?? undefined;

  const textAlign = (cs.textAlign || "").trim() || context.textAlign;
  const display = (cs.display || "").trim() || defaultDisplay(tag);
  const opacityRaw = parseFloat(cs.opacity || "");
  const opacity = Number.isNaN(opacityRaw) ? 1 : Math.max(0, Math.min(1, opacityRaw));

  const style: StyleSubset = {
    fontSizePx: fontSize,
    fontFamilies: families,
    lineHeightPx: lineHeight,
    color,
    backgroundColor,
    textAlign,
    margin: edgesFrom(cs, "margin", tag, errors, label),
    padding: edgesFrom(cs, "padding", tag, errors, label),
    display,
    opacity,
  };
  if (borderColor && borderColor.a > 0) style.borderColor = borderColor;

  const next: InheritedContext = {
    fontSize,
    families,
    // Unitless line-height recomputes per element; propagating resolved px
    // matches how the auditor's static ingest treats plain-px values.
    lineHeight,
    color,
    textAlign,
  };
  return { style, next };
}

function ownText(element: Element): string | undefined {
  const tag = element.tagName.toLowerCase();
  if (tag === "style" || tag === "script") return undefined;
  let collected = "";
  for (const child of Array.from(element.childNodes)) {
    if (child.nodeType === 3) collected += (child.textContent ?? "") + " ";
  }
  const text = normalizeText(collected);
  if (text) return text;
  if (tag === "input") {
    const value = element.getAttribute("value") || element.getAttribute("placeholder");
    if (value) return normalizeText(value);
  }
  return undefined;
}

function pageBox(element: Element, view: Window | typeof globalThis): Box | null {
  try {
    const rect = element.getBoundingClientRect();
    const scrollX = (view as Window).scrollX ?? 0;
    const scrollY = (view as Window).scrollY ?? 0;
    return {
      x: rect.left + scrollX,
      y: rect.top + scrollY,
      width: rect.width,
      height: rect.height,
    };
  } catch {
    return null;
  }
}

function lineBoxes(element: Element, doc: Document, view: Window | typeof globalThis): Box[] {
  const rows: Box[] = [];
  try {
    const range = doc.createRange();
    for (const child of Array.from(element.childNodes)) {
      if (child.nodeType !== 3 || !normalizeText(child.textContent ?? "")) continue;
      range.selectNodeContents(child);
      for (const rect of Array.from(range.getClientRects())) {
        if (rect.width <= 0 || rect.height <= 0) continue;
        const scrollX = (view as Window).scrollX ?? 0;
        const scrollY = (view as Window).scrollY ?? 0;
        const box = {
          x: rect.left + scrollX, y: rect.top + scrollY,
          width: rect.width, height: rect.height,
        };
        // Merge fragments that share a row (one rect per rendered line).
        const last = rows[rows.length - 1];
        if (last && Math.abs(last.y - box.y) < 2) {
          const right = Math.max(last.x + last.width, box.x + box.width);
          last.x = Math.min(last.x, box.x);
          last.width = right - last.x;
          last.height = Math.max(last.height, box.height);
        } else {
          rows.push(box);
        }
      }
    }
  } catch {
    return [];
  }
  return rows;
}

// --- dominant colors (median cut) -------------------------------------------

type Pixel = [number, number, number];

export function dominantColorsFromPixels(pixels: Pixel[], k: number): RgbaColor[] {
  if (k < 1 || pixels.length === 0) return [];
  let buckets: Pixel[][] = [pixels.slice()];
  while (buckets.length < k) {
    let widestIndex = -1;
    let widestRange = 0;
    let widestChannel = 0;
    buckets.forEach((bucket, index) => {
      if (bucket.length < 2) return;
      for (let channel = 0; channel < 3; channel += 1) {
        let lo = 255;
        let hi = 0;
        for (const px of bucket) {
          if (px[channel] < lo) lo = px[channel];
          if (px[channel] > hi) hi = px[channel];
        }
        if (hi - lo > widestRange) {
          widestRange = hi - lo;
          widestIndex = index;
          widestChannel = channel;
        }
      }
    });
    if (widestIndex < 0 || widestRange === 0) break;
    const bucket = buckets[widestIndex];
    bucket.sort((a, b) => a[widestChannel] - b[widestChannel]);
    const mid = Math.floor(bucket.length / 2);
    buckets.splice(widestIndex, 1, bucket.slice(0, mid), bucket.slice(mid));
  }
  buckets.sort((a, b) => b.length - a.length);
  return buckets.map((bucket) => {
    const sum = bucket.reduce(
      (acc, px) => [acc[0] + px[0], acc[1] + px[1], acc[2] + px[2]] as Pixel,
      [0, 0, 0] as Pixel,
    );
    const n = bucket.length;
    return {
      r: Math.round(sum[0] / n),
      g: Math.round(sum[1] / n),
      b: Math.round(sum[2] / n),
      a: 1,
    };
  });
}

export function screenshotColors(canvas: HTMLCanvasElement, k = 5): RgbaColor[] {
  const side = 64;
  const scaled = canvas.ownerDocument.createElement("canvas");
  scaled.width = side;
  scaled.height = side;
  const context = scaled.getContext("2d");
  if (!context) return [];
  context.drawImage(canvas, 0, 0, side, side);
  const data = context.getImageData(0, 0, side, side).data;
  const pixels: Pixel[] = [];
  for (let i = 0; i < data.length; i += 4) {
    pixels.push([data[i], data[i + 1], data[i + 2]]);
  }
  return dominantColorsFromPixels(pixels, k);
}

// --- the walk ----------------------------------------------------------------

export function extract(doc: Document, options: ExtractionOptions = {}): ExtractionResult {
  const errors: string[] = [];
  const maxDepth = Math.max(1, options.maxDepth ?? 256);
  const includeLineBoxes = options.includeLineBoxes ?? true;
  const view = (doc.defaultView ?? globalThis) as unknown as Window;
  const rootElement = doc.documentElement;
  if (!rootElement) {
    throw new Error("document has no root element");
  }

  const seenIds = new Set<string>();
  let preorderIndex = 0;
  const boxes: (Box | null)[] = [];

  const walk = (element: Element, context: InheritedContext, depth: number): SnapshotNode => {
    const index = preorderIndex;
    preorderIndex += 1;
    const tag = element.tagName.toLowerCase();
    let id = element.getAttribute("id") || `n${index}`;
    if (seenIds.has(id)) {
      errors.push(`duplicate id '${id}' reassigned to 'n${index}'`);
      id = `n${index}`;
    }
    seenIds.add(id);
    const label = `<${tag} id=${id}>`;

    const { style, next } = resolveStyle(element, view, context, errors, label);
    const text = ownText(element);
    const box = pageBox(element, view);
    boxes.push(box);

    const node: SnapshotNode = {
      id,
      tag,
      classes: Array.from(element.classList ?? []),
      style,
      children: [],
    };
    if (text !== undefined) node.text = text;
    if (box) node.box = box;
    if (text !== undefined && includeLineBoxes) {
      const rows = lineBoxes(element, doc, view);
      if (rows.length > 0) node.lineBoxes = rows;
    }

    if (depth + 1 >= maxDepth && element.children.length > 0) {
      errors.push(`max depth ${maxDepth} reached at ${label}; subtree truncated`);
      return node;
    }
    for (const child of Array.from(element.children)) {
      node.children.push(walk(child, next, depth + 1));
    }
    return node;
  };

  const root = walk(rootElement, ROOT_CONTEXT, 0);

  // A DOM with no layout reports zero-area boxes everywhere; emitting them
  // would make every element invisible to the auditor, so drop geometry and
  // let the snapshot be static.
  const laidOut = boxes.some((b) => b !== null && b.width > 0 && b.height > 0);
  if (!laidOut) {
    const strip = (node: SnapshotNode): void => {
      delete node.box;
      delete node.lineBoxes;
      node.children.forEach(strip);
    };
    strip(root);
    errors.push("no rendered geometry available; emitted a static snapshot");
  }

  const viewport = options.viewport ?? {
    width: (view as Window).innerWidth || 1280,
    height: (view as Window).innerHeight || 800,
  };

  const snapshot: Snapshot = {
    source: doc.location?.href || "about:blank",
    viewport: { width: Math.max(1, viewport.width), height: Math.max(1, viewport.height) },
    root,
  };

  if (options.includeScreenshotColors && options.screenshotCanvas) {
    try {
      const colors = screenshotColors(options.screenshotCanvas);
      if (colors.length > 0) snapshot.screenshotColors = colors;
    } catch (err) {
      errors.push(`screenshot color extraction failed: ${String(err)}`);
    }
  }

  return { snapshot, errors };
}
