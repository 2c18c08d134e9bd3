/**
 * Byte-preserving access to fields of a JSON text. The service serializes
 * floats with 17 significant digits; JSON.parse followed by String() would
 * reprint them shorter (e.g. "0.32899990000000001" becomes "0.3289999"),
 * so anything shown to the user is sliced straight out of the response
 * text with these helpers instead of being re-rendered from a number.
 */

function skipWs(s: string, i: number): number {
  while (i < s.length && (s[i] === ' ' || s[i] === '\t' || s[i] === '\n' || s[i] === '\r')) i++
  return i
}

function scanString(s: string, i: number): number {
  // i points at the opening quote; returns the index just past the closer
  i++
  while (i < s.length) {
    if (s[i] === '\\') i += 2
    else if (s[i] === '"') return i + 1
    else i++
  }
  throw new Error('unterminated string')
}

function scanValue(s: string, i: number): number {
  const c = s[i]
  if (c === '"') return scanString(s, i)
  if (c === '{' || c === '[') {
    let depth = 0
    while (i < s.length) {
      const ch = s[i]
      if (ch === '"') {
        i = scanString(s, i)
        continue
      }
      if (ch === '{' || ch === '[') depth++
      else if (ch === '}' || ch === ']') {
        depth--
        if (depth === 0) return i + 1
      }
      i++
    }
    throw new Error('unterminated container')
  }
  // number / true / false / null
  let j = i
  while (j < s.length && s[j] !== ',' && s[j] !== '}' && s[j] !== ']' &&
         s[j] !== ' ' && s[j] !== '\t' && s[j] !== '\n' && s[j] !== '\r') j++
  return j
}

/** Raw value text of every top-level key of a JSON object text. */
export function rawFields(s: string): Map<string, string> {
  const out = new Map<string, string>()
  let i = skipWs(s, 0)
  if (s[i] !== '{') throw new Error('not a JSON object')
  i = skipWs(s, i + 1)
  if (s[i] === '}') return out
  for (;;) {
    if (s[i] !== '"') throw new Error('expected key at ' + i)
    const keyEnd = scanString(s, i)
    const key = JSON.parse(s.slice(i, keyEnd)) as string
    i = skipWs(s, keyEnd)
    if (s[i] !== ':') throw new Error('expected colon at ' + i)
    i = skipWs(s, i + 1)
    const valEnd = scanValue(s, i)
    out.set(key, s.slice(i, valEnd))
    i = skipWs(s, valEnd)
    if (s[i] === ',') {
      i = skipWs(s, i + 1)
      continue
    }
    if (s[i] === '}') return out
    throw new Error('expected comma or brace at ' + i)
  }
}

/** Raw value text of one top-level key, or null when absent. */
export function rawField(s: string, key: string): string | null {
  return rawFields(s).get(key) ?? null
}

/** Raw value text reached by descending through nested object keys. */
export function rawPath(s: string, ...keys: string[]): string | null {
  let cur: string | null = s
  for (const key of keys) {
    if (cur === null) return null
    cur = rawField(cur, key)
  }
  return cur
}

/** The two element tokens of a `[re, im]` pair value. */
export function rawPair(s: string, key: string): [string, string] | null {
  const v = rawField(s, key)
  if (v === null || v[0] !== '[') return null
  let i = skipWs(v, 1)
  const aEnd = scanValue(v, i)
  const a = v.slice(i, aEnd)
  i = skipWs(v, aEnd)
  if (v[i] !== ',') return null
  i = skipWs(v, i + 1)
  const bEnd = scanValue(v, i)
  return [a, v.slice(i, bEnd)]
}

/** Parse a raw string token for non-numeric display (status kinds etc.). */
export function unquote(token: string): string {
  return JSON.parse(token)
}
