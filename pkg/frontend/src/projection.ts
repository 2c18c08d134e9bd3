/**
 * Projections of an orbit point (z, w) in C^2 onto the four plane choices
 * the figures use, plus the figure-style display scaling. Everything here
 * is a view transform: it never feeds back into any computed quantity.
 */

export type Axis = 're_z' | 'im_z' | 're_w' | 'im_w'
export type ProjectionPair = readonly [Axis, Axis]

export const PROJECTIONS: readonly ProjectionPair[] = [
  ['re_z', 're_w'],
  ['im_z', 'im_w'],
  ['re_z', 'im_z'],
  ['re_w', 'im_w'],
]

export function projectionLabel(pair: ProjectionPair): string {
  const names: Record<Axis, string> = {
    re_z: 'Re z', im_z: 'Im z', re_w: 'Re w', im_w: 'Im w',
  }
  return `(${names[pair[0]]}, ${names[pair[1]]})`
}

export interface OrbitPoint {
  step: number
  reZ: number
  imZ: number
  reW: number
  imW: number
}

export function axisValue(p: OrbitPoint, axis: Axis): number {
  switch (axis) {
    case 're_z': return p.reZ
    case 'im_z': return p.imZ
    case 're_w': return p.reW
    case 'im_w': return p.imW
  }
}

export function project(p: OrbitPoint, pair: ProjectionPair): { x: number; y: number } {
  return { x: axisValue(p, pair[0]), y: axisValue(p, pair[1]) }
}

/**
 * Per-preset display hint: some presets record their picture shift-scaled
 * (picture = (value - center) * scale). Toggleable, pure view.
 */
export interface DisplayHint {
  center?: [number, number]
  scale?: number
}

export function displayTransform(
  hint: DisplayHint | null,
  enabled: boolean
): (x: number, y: number) => { x: number; y: number } {
  if (!enabled || !hint || (hint.scale === undefined && hint.center === undefined)) {
    return (x, y) => ({ x, y })
  }
  const s = hint.scale ?? 1
  const cx = hint.center ? hint.center[0] : 0
  const cy = hint.center ? hint.center[1] : 0
  return (x, y) => ({ x: (x - cx) * s, y: (y - cy) * s })
}

export interface Bounds {
  xmin: number
  xmax: number
  ymin: number
  ymax: number
}

export function fitBounds(pts: Iterable<{ x: number; y: number }>, pad = 0.05): Bounds | null {
  let xmin = Infinity, xmax = -Infinity, ymin = Infinity, ymax = -Infinity
  let any = false
  for (const p of pts) {
    any = true
    if (p.x < xmin) xmin = p.x
    if (p.x > xmax) xmax = p.x
    if (p.y < ymin) ymin = p.y
    if (p.y > ymax) ymax = p.y
  }
  if (!any) return null
  const spanX = xmax - xmin || 1
  const spanY = ymax - ymin || 1
  return {
    xmin: xmin - pad * spanX,
    xmax: xmax + pad * spanX,
    ymin: ymin - pad * spanY,
    ymax: ymax + pad * spanY,
  }
}

export class Viewport {
  constructor(public bounds: Bounds) {}

  toScreen(w: number, h: number, x: number, y: number): { x: number; y: number } {
    const b = this.bounds
    return {
      x: ((x - b.xmin) / (b.xmax - b.xmin)) * w,
      y: h - ((y - b.ymin) / (b.ymax - b.ymin)) * h,
    }
  }

  toWorld(w: number, h: number, sx: number, sy: number): { x: number; y: number } {
    const b = this.bounds
    return {
      x: (sx / w) * (b.xmax - b.xmin) + b.xmin,
      y: ((h - sy) / h) * (b.ymax - b.ymin) + b.ymin,
    }
  }
}
