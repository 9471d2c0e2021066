/**
 * Exact rational arithmetic over the service's "numerator/denominator"
 * strings. The service never ships floats and neither do we: deltas between
 * two exact amounts are computed here with bigints, then formatted with the
 * same two-decimal half-away-from-zero rule the backend uses, so a derived
 * number can never disagree with a served one.
 */

export interface Rational {
  readonly num: bigint;
  readonly den: bigint; // always > 0; sign lives on num
}

function gcd(a: bigint, b: bigint): bigint {
  let x = a < 0n ? -a : a;
  let y = b < 0n ? -b : b;
  while (y !== 0n) {
    [x, y] = [y, x % y];
  }
  return x;
}

function normalized(num: bigint, den: bigint): Rational {
  if (den === 0n) {
    throw new RangeError("zero denominator");
  }
  if (den < 0n) {
    num = -num;
    den = -den;
  }
  const d = gcd(num, den);
  return d === 0n ? { num: 0n, den: 1n } : { num: num / d, den: den / d };
}

const EXACT_PATTERN = /^(-?\d+)(?:\/(\d+))$|^(-?\d+)$/;

/** Parse "17/19", "43/38", or a bare integer like "3" or "-1". */
export function parseExact(text: string): Rational {
  const match = EXACT_PATTERN.exec(text);
  if (match === null) {
    throw new RangeError(`not an exact amount: ${JSON.stringify(text)}`);
  }
  if (match[3] !== undefined) {
    return normalized(BigInt(match[3]), 1n);
  }
  return normalized(BigInt(match[1]!), BigInt(match[2]!));
}

export function subtract(a: Rational, b: Rational): Rational {
  return normalized(a.num * b.den - b.num * a.den, a.den * b.den);
}

export function isZero(r: Rational): boolean {
  return r.num === 0n;
}

export function isNegative(r: Rational): boolean {
  return r.num < 0n;
}

/** "n/d" for proper fractions, bare "n" for integers. Mirrors the backend. */
export function formatExact(r: Rational): string {
  return r.den === 1n ? r.num.toString() : `${r.num}/${r.den}`;
}

/** Two decimals, ties rounded away from zero: 17/19 -> "0.89", 1/8 -> "0.13". */
export function formatTwoDecimals(r: Rational): string {
  const negative = r.num < 0n;
  const scaled = (negative ? -r.num : r.num) * 100n;
  let hundredths = scaled / r.den;
  if (2n * (scaled % r.den) >= r.den) {
    hundredths += 1n;
  }
  const whole = hundredths / 100n;
  const frac = (hundredths % 100n).toString().padStart(2, "0");
  const sign = negative && hundredths !== 0n ? "-" : "";
  return `${sign}${whole}.${frac}`;
}
