"""Exhaustive alignment-grouping oracle: transitive closure by repeated expansion.

Implements the same grouping semantics as the package (strict <5px coordinate
difference, text-alignment compatibility, in-between interruption) but via a
naive O(n^4) fixpoint instead of union-find, for instances of <= 8 boxes.
"""

HORIZONTAL = ("left", "x_center", "right")


def coord(kind, box):
    x, y, w, h = box
    return {
        "left": x,
        "x_center": x + w / 2,
        "right": x + w,
        "top": y,
        "y_center": y + h / 2,
        "bottom": y + h,
    }[kind]


def text_allows(kind, align):
    if align is None or kind not in HORIZONTAL:
        return True
    if kind == "left":
        return align in ("left", "start", "justify")
    if kind == "x_center":
        return align == "center"
    return align in ("right", "end")


def interrupts(kind, a, b, others):
    ax, ay, aw, ah = a
    bx, by, bw, bh = b
    if kind in HORIZONTAL:
        gap_lo = min(ay + ah, by + bh)
        gap_hi = max(ay, by)
        cross_lo = max(ax, bx)
        cross_hi = min(ax + aw, bx + bw)
    else:
        gap_lo = min(ax + aw, bx + bw)
        gap_hi = max(ax, bx)
        cross_lo = max(ay, by)
        cross_hi = min(ay + ah, by + bh)
    if gap_lo >= gap_hi:
        return False
    if cross_lo > cross_hi:
        ca, cb = coord(kind, a), coord(kind, b)
        cross_lo, cross_hi = min(ca, cb), max(ca, cb)
    for ox, oy, ow, oh in others:
        if kind in HORIZONTAL:
            axis_lo, axis_hi = oy, oy + oh
            o_cross_lo, o_cross_hi = ox, ox + ow
        else:
            axis_lo, axis_hi = ox, ox + ow
            o_cross_lo, o_cross_hi = oy, oy + oh
        if axis_lo < gap_hi and axis_hi > gap_lo and o_cross_lo < cross_hi and o_cross_hi > cross_lo:
            return True
    return False


def linked(kind, i, j, boxes, aligns, threshold=5.0):
    a, b = boxes[i], boxes[j]
    if abs(coord(kind, a) - coord(kind, b)) >= threshold:
        return False
    if not (text_allows(kind, aligns[i]) and text_allows(kind, aligns[j])):
        return False
    others = [boxes[k] for k in range(len(boxes)) if k not in (i, j)]
    return not interrupts(kind, a, b, others)


def oracle_groups(boxes, aligns=None, threshold=5.0):
    """Per kind: set of frozensets of member indices (groups of size >= 2)."""
    n = len(boxes)
    aligns = aligns if aligns is not None else [None] * n
    result = {}
    for kind in ("left", "x_center", "right", "top", "y_center", "bottom"):
        groups = [{i} for i in range(n)]
        changed = True
        while changed:
            changed = False
            for gi in range(len(groups)):
                for gj in range(gi + 1, len(groups)):
                    if any(
                        linked(kind, i, j, boxes, aligns, threshold)
                        for i in groups[gi]
                        for j in groups[gj]
                    ):
                        groups[gi] |= groups[gj]
                        del groups[gj]
                        changed = True
                        break
                if changed:
                    break
        result[kind] = {frozenset(g) for g in groups if len(g) >= 2}
    return result
