import { readFileSync } from 'node:fs'
import type { Transport } from '../src/api.js'

export function fixture(name: string): string {
  return readFileSync(new URL('./fixtures/' + name, import.meta.url), 'utf8')
}

/** Response whose body arrives in chunks of the given byte size. */
export function chunkedResponse(text: string, chunkSize = 700, status = 200): Response {
  const bytes = new TextEncoder().encode(text)
  let offset = 0
  const stream = new ReadableStream<Uint8Array>({
    pull(controller) {
      if (offset >= bytes.length) {
        controller.close()
        return
      }
      controller.enqueue(bytes.slice(offset, offset + chunkSize))
      offset += chunkSize
    },
  })
  return new Response(stream, {
    status,
    headers: { 'content-type': 'application/x-ndjson' },
  })
}

export function jsonResponse(text: string, status = 200, jobId?: string): Response {
  const headers: Record<string, string> = { 'content-type': 'application/json' }
  if (jobId) headers['x-job-id'] = jobId
  return new Response(text, { status, headers })
}

export interface RouteCall {
  url: string
  body: any
  signal: AbortSignal | null
}

/**
 * Transport that routes by URL suffix and records every call with its
 * abort signal, so tests can assert on cancellation and payloads.
 */
export function routedTransport(
  routes: Record<string, (call: RouteCall) => Response | Promise<Response>>
): { transport: Transport; calls: RouteCall[] } {
  const calls: RouteCall[] = []
  const transport: Transport = async (url, init) => {
    const call: RouteCall = {
      url,
      body: init?.body ? JSON.parse(String(init.body)) : null,
      signal: init?.signal ?? null,
    }
    calls.push(call)
    for (const suffix of Object.keys(routes)) {
      if (url.endsWith(suffix)) return routes[suffix](call)
    }
    throw new Error('no route for ' + url)
  }
  return { transport, calls }
}

/**
 * A stream the test pushes lines into by hand; never closes on its own.
 * Honors reader.cancel so an aborted fetch stops cleanly.
 */
export function manualStream(): {
  response: Response
  push(line: string): void
  close(): void
} {
  let controller!: ReadableStreamDefaultController<Uint8Array>
  const encoder = new TextEncoder()
  let closed = false
  const stream = new ReadableStream<Uint8Array>({
    start(c) {
      controller = c
    },
    cancel() {
      closed = true
    },
  })
  return {
    response: new Response(stream, {
      status: 200,
      headers: { 'content-type': 'application/x-ndjson' },
    }),
    push(line: string) {
      if (!closed) controller.enqueue(encoder.encode(line + '\n'))
    },
    close() {
      if (!closed) {
        closed = true
        controller.close()
      }
    },
  }
}

export function tick(ms = 0): Promise<void> {
  return new Promise((r) => setTimeout(r, ms))
}
