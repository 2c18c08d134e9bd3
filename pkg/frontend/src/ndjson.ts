/**
 * Incremental NDJSON reader. Every record keeps the raw line text next to
 * the parsed value: the display layer shows numbers as the service wrote
 * them, byte for byte, so the raw text is the source of truth and the
 * parsed value is only for geometry.
 */

export interface NdjsonRecord {
  raw: string
  value: any
}

export function createLineSplitter(onLine: (raw: string) => void) {
  let buf = ''
  return {
    push(chunk: string) {
      buf += chunk
      for (;;) {
        const idx = buf.indexOf('\n')
        if (idx === -1) break
        const line = buf.slice(0, idx)
        buf = buf.slice(idx + 1)
        if (line.trim().length > 0) onLine(line)
      }
    },
    flush() {
      const tail = buf
      buf = ''
      if (tail.trim().length > 0) onLine(tail)
    },
  }
}

export async function* ndjsonRecords(
  body: ReadableStream<Uint8Array>,
  signal?: AbortSignal
): AsyncGenerator<NdjsonRecord> {
  const reader = body.getReader()
  const decoder = new TextDecoder()
  const pending: NdjsonRecord[] = []
  const splitter = createLineSplitter((raw) => {
    pending.push({ raw, value: JSON.parse(raw) })
  })

  const onAbort = () => {
    reader.cancel().catch(() => {})
  }
  if (signal) {
    if (signal.aborted) onAbort()
    else signal.addEventListener('abort', onAbort, { once: true })
  }

  try {
    for (;;) {
      const { value, done } = await reader.read()
      if (done) break
      splitter.push(decoder.decode(value, { stream: true }))
      while (pending.length > 0) {
        if (signal?.aborted) return
        yield pending.shift()!
      }
    }
    splitter.flush()
    while (pending.length > 0) {
      if (signal?.aborted) return
      yield pending.shift()!
    }
  } finally {
    if (signal) signal.removeEventListener('abort', onAbort)
    reader.releaseLock()
  }
}
