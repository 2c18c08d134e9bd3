import { describe, expect, it } from 'vitest'
import { ServiceClient } from '../src/api.js'
import { GridSurface } from '../src/surface.js'
import { Session } from '../src/session.js'
import type { ProjectionPair } from '../src/projection.js'
import { chunkedResponse, fixture, jsonResponse, routedTransport } from './helpers.js'

/**
 * The fig7 picture, rebuilt from streamed data alone: a bounded closed
 * curve in each of the three projections its registry entry lists.
 * "Closed curve" is asserted on the rasterized cells: full angular
 * coverage around the drawing's centroid with an empty hole at the
 * center, and nothing plotted out of range.
 */

function fig7Projections(): ProjectionPair[] {
  const registry = JSON.parse(fixture('presets.json'))
  const pairs = registry.presets.fig7.projections as Array<[string, string]>
  expect(pairs.length).toBe(3)
  return pairs.map((p) => [p[0], p[1]] as unknown as ProjectionPair)
}

function ringStats(grid: GridSurface) {
  let sx = 0
  let sy = 0
  let count = 0
  const occ: Array<{ x: number; y: number }> = []
  for (let y = 0; y < grid.height; y++) {
    for (let x = 0; x < grid.width; x++) {
      if (grid.occupied(x, y)) {
        occ.push({ x, y })
        sx += x
        sy += y
        count++
      }
    }
  }
  const cx = sx / count
  const cy = sy / count
  const sectors = new Set<number>()
  let rmin = Infinity
  for (const { x, y } of occ) {
    const dx = x + 0.5 - cx
    const dy = y + 0.5 - cy
    const r = Math.hypot(dx, dy)
    if (r < rmin) rmin = r
    const angle = Math.atan2(dy, dx)
    sectors.add(Math.floor(((angle + Math.PI) / (2 * Math.PI)) * 36) % 36)
  }
  return { count, rmin, sectors: sectors.size }
}

describe('fig7 from the stream', () => {
  it('draws a bounded closed curve in all three recorded projections', async () => {
    const { transport } = routedTransport({
      '/api/presets': () => jsonResponse(fixture('presets.json')),
      '/api/iterate': () => chunkedResponse(fixture('iterate_fig7.ndjson'), 128 * 1024),
    })
    const session = new Session(new ServiceClient('', transport))
    await session.loadPresets()
    await session.applyPreset('fig7')

    expect(session.readouts.statusKind).toBe('bounded')
    expect(session.buffer.points.length).toBe(5001)

    for (const pair of fig7Projections()) {
      session.setProjection(pair)
      const grid = new GridSurface(140, 140)
      const vp = session.renderTo(grid)
      expect(vp).not.toBeNull()

      // bounded: every drawn point landed inside the fitted viewport
      expect(grid.outOfRange).toBe(0)
      expect(grid.plotted).toBeGreaterThan(4000)

      const stats = ringStats(grid)
      // closed: the curve wraps all the way around its centroid
      expect(stats.sectors).toBe(36)
      // and it is a ring, not a disk: the middle stays empty
      expect(stats.rmin).toBeGreaterThan(5)
    }
  })

  it('the preset starts on the first of its recorded projections', async () => {
    const { transport } = routedTransport({
      '/api/presets': () => jsonResponse(fixture('presets.json')),
      '/api/iterate': () => chunkedResponse(fixture('iterate_fig7.ndjson'), 128 * 1024),
    })
    const session = new Session(new ServiceClient('', transport))
    await session.loadPresets()
    await session.applyPreset('fig7')
    expect(session.projection).toEqual(fig7Projections()[0])
  })
})
