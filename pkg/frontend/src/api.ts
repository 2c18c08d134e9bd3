import { ndjsonRecords, type NdjsonRecord } from './ndjson.js'

/**
 * Client for the henon_rings service. Every result hands back the raw
 * response text alongside the parsed value; callers display from the raw
 * text only. The transport is injectable so tests can intercept it.
 */

export type Transport = (url: string, init?: RequestInit) => Promise<Response>

/** Non-2xx response: 400 schema violations and 422 numerical failures. */
export class ServiceError extends Error {
  constructor(
    public readonly status: number,
    public readonly raw: string,
    public readonly value: any
  ) {
    super(value && value.message ? String(value.message) : `service returned ${status}`)
  }

  get kind(): string {
    return this.value && this.value.error ? String(this.value.error) : 'error'
  }
}

/** Transport-level failure (service down, connection dropped). */
export class ConnectionLost extends Error {
  constructor(public readonly cause_: unknown) {
    super('service unreachable')
  }
}

export interface Document {
  raw: string
  value: any
  jobId: string | null
}

export interface StreamHandlers {
  onHeader?(rec: NdjsonRecord): void
  onPoint?(rec: NdjsonRecord): void
  onReadout?(rec: NdjsonRecord): void
  onStatus?(rec: NdjsonRecord): void
}

async function request(transport: Transport, url: string, init?: RequestInit): Promise<Response> {
  let resp: Response
  try {
    resp = await transport(url, init)
  } catch (e) {
    if (e instanceof DOMException && e.name === 'AbortError') throw e
    throw new ConnectionLost(e)
  }
  if (!resp.ok) {
    const raw = await resp.text()
    let value: any = null
    try {
      value = JSON.parse(raw)
    } catch {
      // non-JSON error body; keep raw
    }
    throw new ServiceError(resp.status, raw, value)
  }
  return resp
}

function postInit(body: unknown, signal?: AbortSignal): RequestInit {
  return {
    method: 'POST',
    headers: { 'content-type': 'application/json' },
    body: JSON.stringify(body),
    signal,
  }
}

export class ServiceClient {
  constructor(
    private readonly base: string = '',
    private readonly transport: Transport = (u, i) => fetch(u, i)
  ) {}

  private async document(resp: Response): Promise<Document> {
    const raw = await resp.text()
    return { raw, value: JSON.parse(raw), jobId: resp.headers.get('x-job-id') }
  }

  async presets(): Promise<Document> {
    return this.document(await request(this.transport, this.base + '/api/presets'))
  }

  async solve(body: unknown, signal?: AbortSignal): Promise<Document> {
    return this.document(
      await request(this.transport, this.base + '/api/solve', postInit(body, signal))
    )
  }

  async search(kind: 'exotic' | 'herman', body: unknown, signal?: AbortSignal): Promise<Document> {
    return this.document(
      await request(this.transport, this.base + '/api/search/' + kind, postInit(body, signal))
    )
  }

  /**
   * POST /api/iterate and dispatch the NDJSON records in arrival order.
   * Point records carry no "kind" key; everything else is tagged.
   */
  async iterate(body: unknown, handlers: StreamHandlers, signal?: AbortSignal): Promise<void> {
    const resp = await request(this.transport, this.base + '/api/iterate', postInit(body, signal))
    if (!resp.body) throw new ConnectionLost(new Error('response has no body'))
    try {
      for await (const rec of ndjsonRecords(resp.body, signal)) {
        const kind = rec.value.kind
        if (kind === undefined) handlers.onPoint?.(rec)
        else if (kind === 'header') handlers.onHeader?.(rec)
        else if (kind === 'readout') handlers.onReadout?.(rec)
        else if (kind === 'status') handlers.onStatus?.(rec)
      }
    } catch (e) {
      if (signal?.aborted) return
      if (e instanceof DOMException && e.name === 'AbortError') return
      throw new ConnectionLost(e)
    }
  }
}
