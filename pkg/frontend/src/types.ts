// Scene documents and geometry payloads, exactly as the compute service
// speaks them. All angles in documents are degrees; payload angles are
// radians. [t, x, y] triples carry the curve parameter alongside the point.

export interface FiniteRadiantDoc {
  kind: "finite";
  point: [number, number];
}

export interface InfinityRadiantDoc {
  kind: "at_infinity";
  direction_deg: number;
}

export type RadiantDoc = FiniteRadiantDoc | InfinityRadiantDoc;

export interface CurveDoc {
  kind: string;
  params?: Record<string, number>;
  x?: string;
  y?: string;
  domain?: [number, number];
  closed?: boolean;
}

export interface SceneDocument {
  curve: CurveDoc;
  radiants: RadiantDoc[];
  grid?: { t_min?: number; t_max?: number; n?: number };
  outputs?: string[];
}

export type Triple = [number, number, number]; // [t, x, y]

export interface AsymptoteJson {
  t: number;
  point: [number, number];
  direction: [number, number];
  at_infinity: true;
}

export interface CuspJson {
  t: number;
  point: [number, number];
}

export interface ComponentJson {
  id: number;
  closed: boolean;
  samples: Triple[];
  cusps: CuspJson[];
  asymptote_before: AsymptoteJson | null;
  asymptote_after: AsymptoteJson | null;
}

export interface CausticJson {
  radiant: number;
  components: ComponentJson[];
}

export interface CircleJson {
  t: number;
  center?: [number, number];
  R: number | { at_infinity: true };
}

export interface RollingFrameJson {
  t: number;
  s: number;
  center: [number, number];
  R: number;
  omega: number;
  contact: [number, number];
  beta_arclen: number;
  traces: { radiant: number; point: [number, number] }[];
}

export interface GeometryPayload {
  grid: { t_min: number; t_max: number; n: number; cyclic: boolean };
  layers: {
    alpha?: { samples: Triple[] };
    beta?: { family: string; samples: Triple[] };
    caustic?: CausticJson[];
    cusps?: (CuspJson & { radiant: number })[];
    asymptotes?: (AsymptoteJson & { radiant: number })[];
    focal_circles?: { radiant: number; circles: CircleJson[] };
    discriminant_circles?: CircleJson[];
    rolling_frames?: RollingFrameJson[] | { unavailable: string };
  };
}

export interface CatalogEntry {
  kind: string;
  params: Record<string, number>;
  domain: [number, number];
  closed: boolean;
  label: string;
}

export function framesOf(payload: GeometryPayload | null): RollingFrameJson[] {
  const frames = payload?.layers.rolling_frames;
  return Array.isArray(frames) ? frames : [];
}
