import { describe, expect, it } from 'vitest'
import {
  PROJECTIONS, Viewport, displayTransform, fitBounds, project, projectionLabel,
  type OrbitPoint,
} from '../src/projection.js'

const p: OrbitPoint = { step: 7, reZ: 1, imZ: 2, reW: 3, imW: 4 }

describe('projections', () => {
  it('offers the four figure planes', () => {
    expect(PROJECTIONS.map(projectionLabel)).toEqual([
      '(Re z, Re w)', '(Im z, Im w)', '(Re z, Im z)', '(Re w, Im w)',
    ])
  })

  it('projects onto each axis pair', () => {
    expect(project(p, ['re_z', 're_w'])).toEqual({ x: 1, y: 3 })
    expect(project(p, ['im_z', 'im_w'])).toEqual({ x: 2, y: 4 })
    expect(project(p, ['re_z', 'im_z'])).toEqual({ x: 1, y: 2 })
    expect(project(p, ['re_w', 'im_w'])).toEqual({ x: 3, y: 4 })
  })
})

describe('display scaling', () => {
  it('is the identity when disabled or without a hint', () => {
    expect(displayTransform(null, true)(1.5, -2)).toEqual({ x: 1.5, y: -2 })
    expect(displayTransform({ scale: 20 }, false)(1.5, -2)).toEqual({ x: 1.5, y: -2 })
    expect(displayTransform({}, true)(1.5, -2)).toEqual({ x: 1.5, y: -2 })
  })

  it('applies the preset shift-scale as a pure affine map', () => {
    const t = displayTransform({ center: [0.5, 0.58], scale: 20 }, true)
    expect(t(0.5, 0.58)).toEqual({ x: 0, y: 0 })
    expect(t(0.6, 0.58).x).toBeCloseTo(2, 12)
    const s = displayTransform({ scale: 5 }, true)
    expect(s(0.2, -0.4).x).toBeCloseTo(1, 12)
    expect(s(0.2, -0.4).y).toBeCloseTo(-2, 12)
  })
})

describe('viewport', () => {
  it('fits bounds with padding and round-trips screen/world', () => {
    const b = fitBounds([{ x: 0, y: 0 }, { x: 1, y: 2 }], 0)!
    const vp = new Viewport(b)
    const s = vp.toScreen(100, 200, 0.5, 1)
    expect(s).toEqual({ x: 50, y: 100 })
    const w = vp.toWorld(100, 200, s.x, s.y)
    expect(w.x).toBeCloseTo(0.5, 12)
    expect(w.y).toBeCloseTo(1, 12)
  })

  it('returns null bounds for an empty set', () => {
    expect(fitBounds([])).toBeNull()
  })
})
