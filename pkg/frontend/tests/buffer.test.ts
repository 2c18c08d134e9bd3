import { describe, expect, it } from 'vitest'
import { DECIMATION_LIMIT, PointBuffer } from '../src/buffer.js'
import type { OrbitPoint } from '../src/projection.js'

const pt = (step: number): OrbitPoint => ({ step, reZ: step, imZ: 0, reW: 0, imW: 0 })

describe('point buffer decimation', () => {
  it('draws everything below the limit', () => {
    const buf = new PointBuffer()
    for (let i = 0; i < 5001; i++) {
      const { draw, redraw } = buf.append(pt(i))
      expect(draw).toBe(true)
      expect(redraw).toBe(false)
    }
    expect(buf.stride).toBe(1)
    expect(buf.drawable().length).toBe(5001)
  })

  it('keeps all points but never draws more than the limit', () => {
    const buf = new PointBuffer()
    let redraws = 0
    for (let i = 0; i < 120001; i++) {
      const { redraw } = buf.append(pt(i))
      if (redraw) redraws++
      if (i % 5000 === 0 || redraw) {
        expect(buf.drawable().length <= DECIMATION_LIMIT + 1).toBe(true)
      }
    }
    expect(buf.points.length).toBe(120001)
    expect(buf.stride).toBe(4)
    expect(redraws).toBe(2)
    const drawn = buf.drawable()
    // stream order, every stride-th point
    expect(drawn[0].step).toBe(0)
    expect(drawn[1].step).toBe(4)
    expect(drawn[drawn.length - 1].step).toBe(120000)
  })

  it('draw flag matches the stride in force at arrival time', () => {
    const buf = new PointBuffer()
    const drawnSteps: number[] = []
    for (let i = 0; i < DECIMATION_LIMIT * 2 + 10; i++) {
      if (buf.append(pt(i)).draw) drawnSteps.push(i)
    }
    // after the first doubling only even steps are drawn
    const lateOdd = drawnSteps.filter((s) => s > DECIMATION_LIMIT && s % 2 === 1)
    expect(lateOdd).toEqual([])
  })

  it('clear resets stride and contents', () => {
    const buf = new PointBuffer()
    for (let i = 0; i < DECIMATION_LIMIT + 5; i++) buf.append(pt(i))
    expect(buf.stride).toBe(2)
    buf.clear()
    expect(buf.stride).toBe(1)
    expect(buf.points.length).toBe(0)
  })
})
