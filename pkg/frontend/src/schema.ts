/**
 * Zod schema mirroring docs/snapshot.schema.json — the wire contract with
 * the auditor. Used by tests and available to embedders for validation;
 * the snippet build does not include it.
 */

import { z } from "zod";

export const colorSchema = z
  .object({
    r: z.number().int().min(0).max(255),
    g: z.number().int().min(0).max(255),
    b: z.number().int().min(0).max(255),
    a: z.number().min(0).max(1).optional(),
  })
  .strict();

export const boxSchema = z
  .object({
    x: z.number(),
    y: z.number(),
    width: z.number().min(0),
    height: z.number().min(0),
  })
  .strict();

export const edgesSchema = z
  .object({
    top: z.number().min(0),
    right: z.number().min(0),
    bottom: z.number().min(0),
    left: z.number().min(0),
  })
  .strict();

export const styleSchema = z
  .object({
    fontSizePx: z.number().positive(),
    fontFamilies: z.array(z.string()),
    lineHeightPx: z.number().optional(),
    color: colorSchema,
    backgroundColor: colorSchema,
    borderColor: colorSchema.optional(),
    textAlign: z.enum(["left", "right", "center", "justify", "start", "end"]),
    margin: edgesSchema,
    padding: edgesSchema,
    display: z.string(),
    opacity: z.number().min(0).max(1),
  })
  .strict();

export interface NodeShape {
  id: string;
  tag: string;
  classes: string[];
  text?: string;
  style: z.infer<typeof styleSchema>;
  box?: z.infer<typeof boxSchema>;
  lineBoxes?: z.infer<typeof boxSchema>[];
  children: NodeShape[];
}

export const nodeSchema: z.ZodType<NodeShape> = z.lazy(() =>
  z
    .object({
      id: z.string().min(1),
      tag: z.string().min(1),
      classes: z.array(z.string()),
      text: z.string().optional(),
      style: styleSchema,
      box: boxSchema.optional(),
      lineBoxes: z.array(boxSchema).optional(),
      children: z.array(nodeSchema),
    })
    .strict(),
);

export const ocrLineSchema = z
  .object({
    text: z.string().min(1),
    vertices: z.array(z.tuple([z.number().min(0).max(1), z.number().min(0).max(1)])).length(4),
    pageWidth: z.number().int().positive(),
    pageHeight: z.number().int().positive(),
  })
  .strict();

export const snapshotSchema = z
  .object({
    source: z.string(),
    viewport: z
      .object({
        width: z.number().int().positive(),
        height: z.number().int().positive(),
      })
      .strict(),
    root: nodeSchema,
    ocrLines: z.array(ocrLineSchema).optional(),
    screenshotColors: z.array(colorSchema).optional(),
  })
  .strict();

export type SnapshotShape = z.infer<typeof snapshotSchema>;

export function validateSnapshot(raw: unknown): SnapshotShape {
  return snapshotSchema.parse(raw);
}

/** Collect a flat list of (id, node) pairs in preorder. */
export function flatten(node: NodeShape): [string, NodeShape][] {
  const out: [string, NodeShape][] = [[node.id, node]];
  for (const child of node.children) out.push(...flatten(child));
  return out;
}
