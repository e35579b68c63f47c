// Degree/radian conversion at the UI boundary. Documents carry degrees as
// the source of truth, so values entered in degrees are never converted and
// back; these helpers are for display of payload angles (radians).

export function degToRad(deg: number): number {
  return (deg * Math.PI) / 180;
}

export function radToDeg(rad: number): number {
  return (rad * 180) / Math.PI;
}

export function normalizeDeg(deg: number): number {
  const d = deg % 360;
  return d < 0 ? d + 360 : d;
}
