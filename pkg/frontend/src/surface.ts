/**
 * Where points land. The canvas implementation lives in canvas.ts; the
 * grid implementation rasterizes into a cell array so tests can assert on
 * what was actually drawn without a DOM.
 */

export interface PlotSurface {
  readonly width: number
  readonly height: number
  clear(): void
  plot(sx: number, sy: number): void
  /** emphasized mark for the seed */
  marker(sx: number, sy: number): void
}

export class GridSurface implements PlotSurface {
  cells: Uint8Array
  plotted = 0
  outOfRange = 0
  markers: Array<{ x: number; y: number }> = []

  constructor(public readonly width: number, public readonly height: number) {
    this.cells = new Uint8Array(width * height)
  }

  clear() {
    this.cells.fill(0)
    this.plotted = 0
    this.outOfRange = 0
    this.markers = []
  }

  plot(sx: number, sy: number) {
    const x = Math.floor(sx)
    const y = Math.floor(sy)
    if (x < 0 || y < 0 || x >= this.width || y >= this.height || !isFinite(sx) || !isFinite(sy)) {
      this.outOfRange++
      return
    }
    this.cells[y * this.width + x] = 1
    this.plotted++
  }

  marker(sx: number, sy: number) {
    this.markers.push({ x: sx, y: sy })
  }

  occupied(x: number, y: number): boolean {
    return this.cells[y * this.width + x] === 1
  }
}
