import { describe, expect, it } from 'vitest'
import { ServiceClient } from '../src/api.js'
import { Session } from '../src/session.js'
import {
  chunkedResponse, fixture, jsonResponse, manualStream, routedTransport, tick,
} from './helpers.js'

const PRESETS = fixture('presets.json')

function makeSession(routes: Parameters<typeof routedTransport>[0]) {
  const { transport, calls } = routedTransport({ '/api/presets': () => jsonResponse(PRESETS), ...routes })
  const session = new Session(new ServiceClient('', transport))
  return { session, calls }
}

describe('steering', () => {
  it('aborts the running stream before starting the next: one in flight', async () => {
    const streams = [manualStream(), manualStream()]
    let i = 0
    const { session, calls } = makeSession({
      '/api/iterate': () => streams[i++].response,
    })
    await session.loadPresets()

    void session.applyPreset('fig7')
    await tick()
    streams[0].push('{"kind":"header","schema_version":1,"map":"henon","n":5000}')
    streams[0].push('{"step":0,"z":[0.1,0.2],"w":[0.3,0.4]}')
    streams[0].push('{"step":1,"z":[0.11,0.2],"w":[0.3,0.4]}')
    await tick()
    expect(session.buffer.points.length).toBe(2)

    void session.dragSeed([5.0, 0.0], [5.0, 0.0])
    await tick()

    const iterateCalls = calls.filter((c) => c.url.endsWith('/api/iterate'))
    expect(iterateCalls.length).toBe(2)
    expect(iterateCalls[0].signal?.aborted).toBe(true)
    expect(iterateCalls[1].signal?.aborted).toBe(false)
    expect(iterateCalls[1].body).toEqual({
      preset: 'fig7',
      seed: { z: [5.0, 0.0], w: [5.0, 0.0] },
    })

    // the superseded stream's late lines must not land anywhere
    streams[0].push('{"step":2,"z":[9,9],"w":[9,9]}')
    streams[1].push('{"kind":"header","schema_version":1,"map":"henon","n":5000}')
    streams[1].push('{"step":0,"z":[5,0],"w":[5,0]}')
    await tick()
    expect(session.buffer.points.length).toBe(1)
    expect(session.buffer.points[0].reZ).toBe(5)

    streams[1].push('{"kind":"status","schema_version":1,"status":{"kind":"escaped","step":0},'
      + '"n_points":1,"rotation_estimate":null,"attraction_gap":null}')
    streams[1].close()
    await tick()
    expect(session.streaming).toBe(false)
    // only the run that reached a terminal state enters the history
    expect(session.history.length).toBe(1)
    expect(session.history[0].outcome).toBe('escaped')
  })

  it('a seed dragged outside the basin flips the status to escaped', async () => {
    const { session } = makeSession({
      '/api/iterate': (call) =>
        call.body.seed
          ? chunkedResponse(fixture('iterate_escape.ndjson'))
          : chunkedResponse(fixture('iterate_fig7.ndjson'), 256 * 1024),
    })
    await session.loadPresets()
    await session.applyPreset('fig7')
    expect(session.readouts.statusKind).toBe('bounded')

    await session.dragSeed([5.0, 0.0], [5.0, 0.0])
    expect(session.readouts.statusKind).toBe('escaped')
    expect(session.readouts.nPoints).toBe('2')
    expect(session.buffer.points.length).toBe(2)
  })

  it('applying a preset adopts its first recorded projection', async () => {
    const { session } = makeSession({
      '/api/iterate': () => chunkedResponse(fixture('iterate_escape.ndjson')),
    })
    await session.loadPresets()
    await session.applyPreset('fig7')
    expect(session.projection).toEqual(['im_z', 'im_w'])
  })
})

describe('failure surfaces', () => {
  it('renders a 422 numerical failure inline, keeps the banner down', async () => {
    const { session } = makeSession({
      '/api/iterate': () => jsonResponse(fixture('err_branch.json'), 422),
    })
    await session.loadPresets()
    await session.applyPreset('fig7')

    expect(session.error).not.toBeNull()
    expect(session.error!.kind).toBe('branch-failure')
    expect(session.error!.message).toContain('discriminant')
    expect(session.error!.raw).toBe(fixture('err_branch.json'))
    expect(session.banner).toBeNull()
    expect(session.streaming).toBe(false)
    expect(session.history[0].outcome).toBe('error: branch-failure')
  })

  it('shows a non-blocking banner when the service is unreachable', async () => {
    const { session } = makeSession({
      '/api/iterate': () => Promise.reject(new TypeError('fetch failed')),
    })
    await session.loadPresets()
    await session.applyPreset('fig7')

    expect(session.banner).toBe('service unreachable; retry when it is back')
    expect(session.error).toBeNull()
    expect(session.streaming).toBe(false)
    // a later successful steer clears it
    expect(session.history[0].outcome).toBe('unreachable')
  })
})

describe('history', () => {
  it('entries are immutable and earlier snapshots never change', async () => {
    const { session } = makeSession({
      '/api/iterate': () => chunkedResponse(fixture('iterate_escape.ndjson')),
    })
    await session.loadPresets()
    await session.applyPreset('fig7')
    const snapshot = session.history
    expect(snapshot.length).toBe(1)

    await session.dragSeed([5, 0], [5, 0])
    expect(session.history.length).toBe(2)
    expect(snapshot.length).toBe(1)

    const entry = session.history[0]
    expect(Object.isFrozen(session.history)).toBe(true)
    expect(Object.isFrozen(entry)).toBe(true)
    expect(Object.isFrozen(entry.config)).toBe(true)
    expect(() => {
      ;(entry as any).outcome = 'tampered'
    }).toThrow()
    expect(() => {
      ;(session.history as any).push(null)
    }).toThrow()
  })
})

describe('documents', () => {
  it('solve readout carries the g tokens and the job id', async () => {
    const { session } = makeSession({
      '/api/solve': () => jsonResponse(fixture('solve_tau1.json'), 200, 'job-1'),
    })
    await session.solveG()
    expect(session.solveReadout).not.toBeNull()
    expect(session.solveReadout!.gRe).toBe('-0.83455389696819071')
    expect(session.solveReadout!.gIm).toBe('0')
    expect(session.solveReadout!.jobId).toBe('job-1')
  })

  it('search posts the slider parameters and stores the report', async () => {
    const { session, calls } = makeSession({
      '/api/search/exotic': () => jsonResponse(fixture('search_exotic.json')),
    })
    session.params.delta = 0.01
    await session.runSearch('exotic')
    const call = calls.find((c) => c.url.endsWith('/api/search/exotic'))!
    expect(call.body.delta).toBe(0.01)
    expect(call.body.mbeta).toEqual([1, 0])
    expect(session.searchDoc!.raw).toBe(fixture('search_exotic.json'))
  })
})
