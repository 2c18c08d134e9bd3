import type { PlotSurface } from './surface.js'

/** Canvas-backed surface: append-only point plotting, cheap clear. */
export class CanvasSurface implements PlotSurface {
  private ctx: CanvasRenderingContext2D

  constructor(private readonly canvas: HTMLCanvasElement) {
    const ctx = canvas.getContext('2d')
    if (!ctx) throw new Error('2d context unavailable')
    this.ctx = ctx
  }

  get width() {
    return this.canvas.width
  }

  get height() {
    return this.canvas.height
  }

  clear() {
    this.ctx.fillStyle = '#10141a'
    this.ctx.fillRect(0, 0, this.width, this.height)
  }

  plot(sx: number, sy: number) {
    this.ctx.fillStyle = '#53c6e8'
    this.ctx.fillRect(sx - 0.75, sy - 0.75, 1.5, 1.5)
  }

  marker(sx: number, sy: number) {
    this.ctx.strokeStyle = '#ff8a3c'
    this.ctx.lineWidth = 1.5
    this.ctx.beginPath()
    this.ctx.arc(sx, sy, 5, 0, 2 * Math.PI)
    this.ctx.stroke()
  }
}
