import type { OrbitPoint } from './projection.js'

/**
 * Append-only store for streamed orbit points with stride decimation for
 * drawing. All points are kept (the history and any re-projection need
 * them); past the limit only every stride-th point is drawn, with the
 * stride doubling each time the drawn count would cross the limit again.
 */

export const DECIMATION_LIMIT = 50000

export interface AppendOutcome {
  /** draw this point now (it survives the current stride) */
  draw: boolean
  /** the stride just doubled: the caller should schedule a full redraw */
  redraw: boolean
}

export class PointBuffer {
  readonly points: OrbitPoint[] = []
  stride = 1

  append(p: OrbitPoint): AppendOutcome {
    const index = this.points.length
    this.points.push(p)
    let redraw = false
    if (this.points.length > DECIMATION_LIMIT * this.stride) {
      this.stride *= 2
      redraw = true
    }
    return { draw: index % this.stride === 0, redraw }
  }

  /** Points surviving the current stride, in stream order. */
  drawable(): OrbitPoint[] {
    if (this.stride === 1) return this.points.slice()
    const out: OrbitPoint[] = []
    for (let i = 0; i < this.points.length; i += this.stride) out.push(this.points[i])
    return out
  }

  clear() {
    this.points.length = 0
    this.stride = 1
  }
}
