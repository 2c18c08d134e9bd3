import { ServiceClient } from './api.js'
import { CanvasSurface } from './canvas.js'
import { PROJECTIONS, projectionLabel, Viewport, type Axis, type ProjectionPair } from './projection.js'
import { rawPath } from './raw.js'
import { Session, type SeedPair } from './session.js'

/** DOM wiring. All numbers on screen are raw tokens from service bytes. */

const $ = (tag: string, cls?: string, text?: string) => {
  const el = document.createElement(tag)
  if (cls) el.className = cls
  if (text !== undefined) el.textContent = text
  return el
}

function sliderRow(
  label: string, min: number, max: number, step: number, value: number,
  onInput: (v: number) => void
): { row: HTMLElement; input: HTMLInputElement } {
  const row = $('label', 'slider-row')
  row.append($('span', 'slider-label', label))
  const input = document.createElement('input')
  input.type = 'range'
  input.min = String(min)
  input.max = String(max)
  input.step = String(step)
  input.value = String(value)
  const val = $('span', 'slider-value', input.value)
  input.addEventListener('change', () => {
    val.textContent = input.value
    onInput(Number(input.value))
  })
  input.addEventListener('input', () => {
    val.textContent = input.value
  })
  row.append(input, val)
  return { row, input }
}

function main() {
  const root = document.getElementById('app')
  if (!root) return

  const client = new ServiceClient('')
  const session = new Session(client)

  const banner = $('div', 'banner hidden')
  const canvas = document.createElement('canvas')
  canvas.width = 720
  canvas.height = 720
  const surface = new CanvasSurface(canvas)
  const controls = $('div', 'controls')
  const readouts = $('div', 'readouts')
  const errorBox = $('div', 'error hidden')
  const historyList = $('ul', 'history')

  const plotWrap = $('div', 'plot-wrap')
  plotWrap.append(canvas)
  const side = $('div', 'side')
  side.append(controls, readouts, errorBox, $('h3', undefined, 'history'), historyList)
  root.append(banner, plotWrap, side)

  let viewport: Viewport | null = null
  let sinceFit = 0

  const fullRedraw = () => {
    viewport = session.renderTo(surface)
    sinceFit = 0
  }

  // ---- controls -------------------------------------------------------

  const presetSelect = document.createElement('select')
  presetSelect.append(new Option('custom (sliders)', ''))
  presetSelect.addEventListener('change', () => {
    if (presetSelect.value) void session.applyPreset(presetSelect.value)
  })
  const presetRow = $('div', 'row')
  presetRow.append($('span', 'slider-label', 'preset'), presetSelect)
  controls.append(presetRow)

  const projRow = $('div', 'row')
  projRow.append($('span', 'slider-label', 'projection'))
  const projButtons: HTMLButtonElement[] = []
  PROJECTIONS.forEach((pair) => {
    const b = document.createElement('button')
    b.textContent = projectionLabel(pair)
    b.addEventListener('click', () => {
      session.setProjection(pair)
      markProjection()
    })
    projButtons.push(b)
    projRow.append(b)
  })
  const markProjection = () => {
    projButtons.forEach((b, i) => {
      b.classList.toggle('active', PROJECTIONS[i] === session.projection ||
        projectionLabel(PROJECTIONS[i]) === projectionLabel(session.projection))
    })
  }
  markProjection()
  controls.append(projRow)

  const scaleRow = $('label', 'row')
  const scaleBox = document.createElement('input')
  scaleBox.type = 'checkbox'
  scaleBox.checked = session.scalingEnabled
  scaleBox.addEventListener('change', () => session.toggleScaling())
  scaleRow.append(scaleBox, $('span', undefined, 'figure display scaling'))
  controls.append(scaleRow)

  const steer = () => void session.setResonant({})
  controls.append(
    sliderRow('tau re', 0.5, 1.5, 0.001, session.params.tau[0], (v) => {
      session.params.tau = [v, session.params.tau[1]]
      steer()
    }).row,
    sliderRow('tau im', -0.5, 0.5, 0.001, session.params.tau[1], (v) => {
      session.params.tau = [session.params.tau[0], v]
      steer()
    }).row,
    sliderRow('mbeta re', -1.5, 1.5, 0.001, session.params.mbeta[0], (v) => {
      session.params.mbeta = [v, session.params.mbeta[1]]
      steer()
    }).row,
    sliderRow('mbeta im', -0.5, 0.5, 0.001, session.params.mbeta[1], (v) => {
      session.params.mbeta = [session.params.mbeta[0], v]
      steer()
    }).row,
    sliderRow('delta', 0, 0.05, 0.0001, session.params.delta, (v) => {
      session.params.delta = v
      steer()
    }).row,
    sliderRow('phi', 0, 0.2, 0.001, session.params.phi, (v) => {
      session.params.phi = v
    }).row,
    sliderRow('n', 500, 20000, 500, session.params.n, (v) => {
      session.params.n = v
      steer()
    }).row
  )

  const buttonRow = $('div', 'row')
  const solveBtn = $('button', undefined, 'Solve g(tau)') as HTMLButtonElement
  solveBtn.addEventListener('click', () => void session.solveG())
  const exoticBtn = $('button', undefined, 'find exotic') as HTMLButtonElement
  exoticBtn.addEventListener('click', () => void session.runSearch('exotic'))
  const hermanBtn = $('button', undefined, 'find herman') as HTMLButtonElement
  hermanBtn.addEventListener('click', () => void session.runSearch('herman'))
  buttonRow.append(solveBtn, exoticBtn, hermanBtn)
  controls.append(buttonRow)

  // ---- readouts -------------------------------------------------------

  const readoutRows = new Map<string, HTMLElement>()
  for (const name of ['status', 'n_points', 'rotation_estimate', 'attraction_gap',
                      'closed_curve_score', 'g', 'Im g', 'search']) {
    const row = $('div', 'readout-row')
    row.append($('span', 'readout-name', name))
    const value = $('span', 'readout-value', '')
    row.append(value)
    readoutRows.set(name, value)
    readouts.append(row)
  }
  const setReadout = (name: string, token: string | null) => {
    const el = readoutRows.get(name)
    if (el) el.textContent = token ?? ''
  }

  const refreshReadouts = () => {
    setReadout('status', session.readouts.statusKind ??
      (session.streaming ? 'streaming' : null))
    setReadout('n_points', session.readouts.nPoints)
    setReadout('rotation_estimate', session.readouts.rotation)
    setReadout('attraction_gap', session.readouts.attraction)
    setReadout('closed_curve_score', session.readouts.score)
  }

  const refreshHistory = () => {
    historyList.textContent = ''
    for (const entry of session.history) {
      const label = entry.config.kind === 'preset'
        ? `preset ${entry.config.name}`
        : `tau=(${entry.config.tau[0]}, ${entry.config.tau[1]}) delta=${entry.config.delta}`
      historyList.append($('li', undefined,
        `${label}  ->  ${entry.outcome}${entry.rotation ? '  rot ' + entry.rotation : ''}`))
    }
  }

  // ---- seed dragging --------------------------------------------------

  const seedFromDrag = (sx: number, sy: number): SeedPair | null => {
    if (!viewport) return null
    const world = viewport.toWorld(canvas.width, canvas.height, sx, sy)
    const base = session.seed
      ?? (session.buffer.points.length > 0
        ? {
            z: [session.buffer.points[0].reZ, session.buffer.points[0].imZ] as [number, number],
            w: [session.buffer.points[0].reW, session.buffer.points[0].imW] as [number, number],
          }
        : null)
    if (!base) return null
    const next: SeedPair = { z: [...base.z], w: [...base.w] }
    const assign = (axis: Axis, v: number) => {
      if (axis === 're_z') next.z[0] = v
      else if (axis === 'im_z') next.z[1] = v
      else if (axis === 're_w') next.w[0] = v
      else next.w[1] = v
    }
    // the drag lands in the displayed plane; undo the display scaling
    const hint = session.displayHint()
    let wx = world.x
    let wy = world.y
    if (session.scalingEnabled && hint) {
      const s = hint.scale ?? 1
      const c = hint.center ?? [0, 0]
      wx = wx / s + c[0]
      wy = wy / s + c[1]
    }
    assign(session.projection[0], wx)
    assign(session.projection[1], wy)
    return next
  }

  canvas.addEventListener('pointerdown', (ev) => {
    const rect = canvas.getBoundingClientRect()
    const seed = seedFromDrag(
      ((ev.clientX - rect.left) / rect.width) * canvas.width,
      ((ev.clientY - rect.top) / rect.height) * canvas.height
    )
    if (seed) void session.dragSeed(seed.z, seed.w)
  })

  // ---- session events -------------------------------------------------

  session.onEvent((ev) => {
    switch (ev.type) {
      case 'presets': {
        const names = Object.keys(session.presetsDoc?.value?.presets ?? {})
        for (const name of names) presetSelect.append(new Option(name, name))
        break
      }
      case 'reset':
        fullRedraw()
        refreshReadouts()
        errorBox.classList.toggle('hidden', session.error === null)
        banner.classList.toggle('hidden', session.banner === null)
        break
      case 'point':
        if (ev.redraw || !viewport || sinceFit > 400) fullRedraw()
        else if (ev.draw) {
          session.drawPoint(surface, viewport, ev.point)
          sinceFit++
        }
        break
      case 'readout':
      case 'status':
        refreshReadouts()
        if (ev.type === 'status') {
          fullRedraw()
          refreshHistory()
        }
        break
      case 'error':
        errorBox.textContent = `${session.error?.kind}: ${session.error?.message}`
        errorBox.classList.remove('hidden')
        refreshHistory()
        break
      case 'banner':
        banner.textContent = session.banner
        banner.classList.toggle('hidden', session.banner === null)
        refreshHistory()
        break
      case 'solve':
        setReadout('g', session.solveReadout?.gRe ?? null)
        setReadout('Im g', session.solveReadout?.gIm ?? null)
        break
      case 'search': {
        const raw = session.searchDoc?.raw ?? null
        const verdict = raw !== null ? rawPath(raw, 'verdict') : null
        const target = raw !== null ? rawPath(raw, 'target') : null
        setReadout('search', verdict !== null ? `${target ?? ''} ${verdict}` : null)
        break
      }
    }
  })

  void session.loadPresets().then(() => {
    presetSelect.value = 'fig7'
    if (presetSelect.value === 'fig7') void session.applyPreset('fig7')
  })
}

main()
