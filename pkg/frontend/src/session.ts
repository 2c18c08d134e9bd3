import { ServiceClient, ServiceError, ConnectionLost, type Document } from './api.js'
import { PointBuffer } from './buffer.js'
import {
  PROJECTIONS, Viewport, displayTransform, fitBounds, project,
  type DisplayHint, type OrbitPoint, type ProjectionPair,
} from './projection.js'
import { rawField, rawPath, unquote } from './raw.js'
import type { PlotSurface } from './surface.js'

/**
 * One explorer session: the current configuration, the streamed orbit,
 * raw-text readouts, and the history of tried configurations. All state
 * changes funnel through here; the DOM layer only reflects it.
 *
 * Two rules hold throughout. Every number shown to the user is a raw
 * token sliced from a service response (never re-rendered from a parsed
 * float), and at most one orbit stream is in flight at a time: any steer
 * aborts the previous stream before starting its own.
 */

export type SeedPair = { z: [number, number]; w: [number, number] }

export type Config =
  | { kind: 'preset'; name: string; seed: SeedPair | null; n: number | null }
  | {
      kind: 'resonant'
      tau: [number, number]
      mbeta: [number, number]
      delta: number
      map: 'henon' | 'henon-mod'
      seed: SeedPair
      n: number
    }

export interface Readouts {
  rotation: string | null
  attraction: string | null
  score: string | null
  nPoints: string | null
  statusKind: string | null
  statusRaw: string | null
}

export interface HistoryEntry {
  config: Config
  outcome: string
  rotation: string | null
}

export interface SolveReadout {
  gRe: string
  gIm: string
  raw: string
  jobId: string | null
}

export type SessionEvent =
  | { type: 'reset' }
  | { type: 'point'; point: OrbitPoint; draw: boolean; redraw: boolean }
  | { type: 'readout' }
  | { type: 'status' }
  | { type: 'error' }
  | { type: 'banner' }
  | { type: 'solve' }
  | { type: 'search' }
  | { type: 'presets' }

const emptyReadouts = (): Readouts => ({
  rotation: null, attraction: null, score: null,
  nPoints: null, statusKind: null, statusRaw: null,
})

export class Session {
  readonly buffer = new PointBuffer()
  readouts: Readouts = emptyReadouts()
  headerRaw: string | null = null
  banner: string | null = null
  error: { kind: string; message: string; raw: string } | null = null
  solveReadout: SolveReadout | null = null
  searchDoc: Document | null = null
  presetsDoc: Document | null = null
  history: readonly Readonly<HistoryEntry>[] = []
  streaming = false
  config: Config | null = null
  projection: ProjectionPair = PROJECTIONS[0]
  scalingEnabled = true

  params = {
    tau: [1.0, 0.0] as [number, number],
    mbeta: [1.0, 0.0] as [number, number],
    delta: 0.01,
    phi: 0.05,
    n: 5000,
    map: 'henon' as 'henon' | 'henon-mod',
  }
  seed: SeedPair | null = null

  private inflight: AbortController | null = null
  private generation = 0
  private listeners = new Set<(ev: SessionEvent) => void>()

  constructor(private readonly client: ServiceClient) {}

  onEvent(fn: (ev: SessionEvent) => void): () => void {
    this.listeners.add(fn)
    return () => this.listeners.delete(fn)
  }

  private emit(ev: SessionEvent) {
    for (const fn of this.listeners) fn(ev)
  }

  async loadPresets(): Promise<void> {
    try {
      this.presetsDoc = await this.client.presets()
      this.emit({ type: 'presets' })
    } catch (e) {
      this.fail(e)
    }
  }

  presetEntry(name: string): any | null {
    return this.presetsDoc?.value?.presets?.[name] ?? null
  }

  /** Display hint and preferred projections for the active preset. */
  displayHint(): DisplayHint | null {
    if (this.config?.kind !== 'preset') return null
    const entry = this.presetEntry(this.config.name)
    return entry?.display ?? null
  }

  async applyPreset(name: string): Promise<void> {
    this.seed = null
    this.config = { kind: 'preset', name, seed: null, n: null }
    const entry = this.presetEntry(name)
    const pair = entry?.projections?.[0]
    if (pair) this.projection = [pair[0], pair[1]] as ProjectionPair
    return this.steer()
  }

  async setResonant(partial: Partial<typeof this.params>): Promise<void> {
    Object.assign(this.params, partial)
    const seed = this.seed ?? this.activeSeedFromPreset() ?? { z: [0.0, 0.0], w: [0.0, 0.0] }
    this.seed = seed
    this.config = {
      kind: 'resonant',
      tau: [...this.params.tau], mbeta: [...this.params.mbeta],
      delta: this.params.delta, map: this.params.map,
      seed, n: this.params.n,
    }
    return this.steer()
  }

  async dragSeed(z: [number, number], w: [number, number]): Promise<void> {
    this.seed = { z, w }
    if (this.config?.kind === 'preset') {
      this.config = { ...this.config, seed: this.seed }
    } else if (this.config?.kind === 'resonant') {
      this.config = { ...this.config, seed: this.seed }
    } else {
      return
    }
    return this.steer()
  }

  setProjection(pair: ProjectionPair) {
    this.projection = pair
    this.emit({ type: 'reset' })
  }

  toggleScaling() {
    this.scalingEnabled = !this.scalingEnabled
    this.emit({ type: 'reset' })
  }

  private activeSeedFromPreset(): SeedPair | null {
    if (this.config?.kind !== 'preset') return null
    const entry = this.presetEntry(this.config.name)
    if (!entry?.seed) return null
    return { z: [entry.seed.z[0], entry.seed.z[1]], w: [entry.seed.w[0], entry.seed.w[1]] }
  }

  private iteratePayload(config: Config): Record<string, unknown> {
    if (config.kind === 'preset') {
      const body: Record<string, unknown> = { preset: config.name }
      if (config.seed) body.seed = config.seed
      if (config.n !== null) body.n = config.n
      return body
    }
    return {
      tau: config.tau, mbeta: config.mbeta, delta: config.delta,
      map: config.map, seed: config.seed, n: config.n,
    }
  }

  /** Cancel whatever is running and start the stream for this.config. */
  async steer(): Promise<void> {
    if (!this.config) return
    const config = this.config
    this.inflight?.abort()
    const controller = new AbortController()
    this.inflight = controller
    const gen = ++this.generation

    this.buffer.clear()
    this.readouts = emptyReadouts()
    this.headerRaw = null
    this.error = null
    this.banner = null
    this.streaming = true
    this.emit({ type: 'reset' })

    try {
      await this.client.iterate(this.iteratePayload(config), {
        onHeader: (rec) => {
          if (gen !== this.generation) return
          this.headerRaw = rec.raw
        },
        onPoint: (rec) => {
          if (gen !== this.generation) return
          const v = rec.value
          const point: OrbitPoint = {
            step: v.step, reZ: v.z[0], imZ: v.z[1], reW: v.w[0], imW: v.w[1],
          }
          const { draw, redraw } = this.buffer.append(point)
          this.emit({ type: 'point', point, draw, redraw })
        },
        onReadout: (rec) => {
          if (gen !== this.generation) return
          this.readouts.rotation = rawField(rec.raw, 'rotation_estimate')
          this.readouts.attraction = rawField(rec.raw, 'attraction_gap')
          this.readouts.score = rawField(rec.raw, 'closed_curve_score')
          this.emit({ type: 'readout' })
        },
        onStatus: (rec) => {
          if (gen !== this.generation) return
          this.readouts.rotation = rawField(rec.raw, 'rotation_estimate')
          this.readouts.attraction = rawField(rec.raw, 'attraction_gap')
          this.readouts.nPoints = rawField(rec.raw, 'n_points')
          this.readouts.statusRaw = rawField(rec.raw, 'status')
          const kindTok = rawPath(rec.raw, 'status', 'kind')
          this.readouts.statusKind = kindTok === null ? null : unquote(kindTok)
          this.emit({ type: 'status' })
        },
      }, controller.signal)
      if (gen !== this.generation) return
      this.streaming = false
      this.pushHistory(config, this.readouts.statusKind ?? 'interrupted')
    } catch (e) {
      if (gen !== this.generation) return
      this.streaming = false
      this.pushHistory(config, this.fail(e))
    }
  }

  async solveG(): Promise<void> {
    try {
      const doc = await this.client.solve({ tau: this.params.tau })
      const g = rawField(doc.raw, 'g')
      // g is a [re, im] pair; slice its element tokens
      const pair = g !== null ? /^\[\s*([^,\s]+)\s*,\s*([^\]\s]+)\s*\]$/.exec(g) : null
      if (pair) {
        this.solveReadout = { gRe: pair[1], gIm: pair[2], raw: doc.raw, jobId: doc.jobId }
        this.emit({ type: 'solve' })
      }
    } catch (e) {
      this.fail(e)
    }
  }

  async runSearch(kind: 'exotic' | 'herman'): Promise<void> {
    const body = kind === 'exotic'
      ? {
          mbeta: this.params.mbeta, tau: this.params.tau,
          delta: this.params.delta, n_iters: this.params.n,
        }
      : {
          mbeta0: this.params.mbeta[0], phi: this.params.phi,
          delta: this.params.delta, tau_guess: this.params.tau,
          n_iters: this.params.n,
        }
    try {
      this.searchDoc = await this.client.search(kind, body)
      this.emit({ type: 'search' })
    } catch (e) {
      this.fail(e)
    }
  }

  private fail(e: unknown): string {
    if (e instanceof ServiceError) {
      this.error = { kind: e.kind, message: e.message, raw: e.raw }
      this.emit({ type: 'error' })
      return 'error: ' + e.kind
    }
    if (e instanceof ConnectionLost) {
      this.banner = 'service unreachable; retry when it is back'
      this.emit({ type: 'banner' })
      return 'unreachable'
    }
    throw e
  }

  private pushHistory(config: Config, outcome: string) {
    const entry = Object.freeze({
      config: Object.freeze(structuredClone(config)),
      outcome,
      rotation: this.readouts.rotation,
    })
    this.history = Object.freeze([...this.history, entry]) as readonly HistoryEntry[]
  }

  /** Projected, display-scaled drawable points for a projection choice. */
  projectedDrawable(pair: ProjectionPair = this.projection): Array<{ x: number; y: number }> {
    const scale = displayTransform(this.displayHint(), this.scalingEnabled)
    return this.buffer.drawable().map((p) => {
      const q = project(p, pair)
      return scale(q.x, q.y)
    })
  }

  /**
   * Full redraw of the current buffer onto a surface; returns the viewport
   * used so the caller can keep plotting incrementally and map drags back
   * to world coordinates.
   */
  renderTo(surface: PlotSurface, pair: ProjectionPair = this.projection): Viewport | null {
    surface.clear()
    const pts = this.projectedDrawable(pair)
    const bounds = fitBounds(pts)
    if (!bounds) return null
    const vp = new Viewport(bounds)
    for (const p of pts) {
      const s = vp.toScreen(surface.width, surface.height, p.x, p.y)
      surface.plot(s.x, s.y)
    }
    if (pts.length > 0) {
      const s0 = vp.toScreen(surface.width, surface.height, pts[0].x, pts[0].y)
      surface.marker(s0.x, s0.y)
    }
    return vp
  }

  /** Plot one incoming point through an existing viewport. */
  drawPoint(surface: PlotSurface, vp: Viewport, point: OrbitPoint, pair: ProjectionPair = this.projection) {
    const scale = displayTransform(this.displayHint(), this.scalingEnabled)
    const q = project(point, pair)
    const p = scale(q.x, q.y)
    const s = vp.toScreen(surface.width, surface.height, p.x, p.y)
    surface.plot(s.x, s.y)
  }
}
