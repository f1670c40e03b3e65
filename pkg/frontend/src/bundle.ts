/** Family bundle parsing and validation.
 *
 * The bundle is self-contained: threshold indices per simplex plus the
 * spectrum are enough to classify everything at every interval, so the
 * viewer never touches coordinates except to position vertices on screen.
 */

export interface SpectrumEntry {
  num: string | null; // exact squared radius numerator; null marks infinity
  den: string | null;
  alpha: number | null; // float radius; null marks infinity
}

export interface SimplexEntry {
  verts: number[]; // 1-based point labels, ascending
  dim: 0 | 1 | 2 | 3;
  hull: boolean;
  attached: boolean;
  mu_lo_index: number;
  mu_hi_index: number;
  rho_index?: number; // present iff dim >= 1 and unattached
}

export interface Signatures {
  components: number[];
  volume: { exact: string[]; float: number[] };
  area: number[];
  face_counts: Record<string, number[]>;
}

export interface Bundle {
  n: number;
  scale: number;
  source: string;
  points: [number, number, number][];
  spectrum: SpectrumEntry[];
  simplices: SimplexEntry[];
  signatures: Signatures;
}

export class BundleError extends Error {}

const FORMAT = "alphafamily-bundle";
const VERSION = 1;

export function intervalCount(bundle: Bundle): number {
  return bundle.spectrum.length - 1;
}

export function parseBundle(text: string): Bundle {
  let doc: any;
  try {
    doc = JSON.parse(text);
  } catch (err) {
    throw new BundleError(`not valid JSON: ${(err as Error).message}`);
  }
  if (doc.format !== FORMAT) {
    throw new BundleError("not a family bundle (missing format marker)");
  }
  if (doc.version !== VERSION) {
    throw new BundleError(
      `bundle version ${doc.version} not supported (viewer speaks ${VERSION})`
    );
  }
  for (const field of ["n", "points", "spectrum", "simplices", "signatures"]) {
    if (!(field in doc)) {
      throw new BundleError(`bundle is missing the ${field} field`);
    }
  }
  const spectrum: SpectrumEntry[] = doc.spectrum;
  if (spectrum.length < 2 || spectrum[spectrum.length - 1].num !== null) {
    throw new BundleError("spectrum must end with the infinity sentinel");
  }
  const last = spectrum.length - 1;
  for (const entry of doc.simplices as SimplexEntry[]) {
    const top = entry.dim === 3 ? entry.rho_index : entry.mu_lo_index;
    if (
      top === undefined ||
      top < 0 ||
      entry.mu_lo_index > last ||
      entry.mu_hi_index > last
    ) {
      throw new BundleError("simplex carries an out-of-range threshold index");
    }
  }
  return {
    n: doc.n,
    scale: doc.scale ?? 0,
    source: doc.source ?? "",
    points: doc.points,
    spectrum,
    simplices: doc.simplices,
    signatures: doc.signatures,
  };
}
