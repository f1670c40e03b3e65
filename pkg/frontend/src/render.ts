/** Three.js scene assembly from classified draw lists.
 *
 * Regular triangles render solid, singular triangles darker (both sides
 * exposed, so material is double-sided), singular edges as lines and
 * singular vertices as points.  Coordinates serve display only; all
 * classification happened upstream from threshold indices.
 */

import * as THREE from "three";

import { Bundle } from "./bundle.js";
import { ClassToggles, DrawLists } from "./classify.js";

const COLORS = {
  regular: 0x4a90d9,
  singular: 0x1d3a57, // darker shade for doubly exposed faces
  interior: 0x86b817,
  edge: 0x23303b,
  vertex: 0xd94a4a,
};

function triangleMesh(
  bundle: Bundle,
  triangles: number[][],
  color: number,
  opacity = 1.0
): THREE.Mesh {
  const positions = new Float32Array(triangles.length * 9);
  let k = 0;
  for (const tri of triangles) {
    for (const label of tri) {
      const [x, y, z] = bundle.points[label - 1];
      positions[k++] = x;
      positions[k++] = y;
      positions[k++] = z;
    }
  }
  const geometry = new THREE.BufferGeometry();
  geometry.setAttribute("position", new THREE.BufferAttribute(positions, 3));
  geometry.computeVertexNormals();
  const material = new THREE.MeshLambertMaterial({
    color,
    side: THREE.DoubleSide,
    transparent: opacity < 1,
    opacity,
  });
  return new THREE.Mesh(geometry, material);
}

function edgeLines(bundle: Bundle, edges: number[][], color: number): THREE.LineSegments {
  const positions = new Float32Array(edges.length * 6);
  let k = 0;
  for (const [a, b] of edges) {
    for (const label of [a, b]) {
      const [x, y, z] = bundle.points[label - 1];
      positions[k++] = x;
      positions[k++] = y;
      positions[k++] = z;
    }
  }
  const geometry = new THREE.BufferGeometry();
  geometry.setAttribute("position", new THREE.BufferAttribute(positions, 3));
  return new THREE.LineSegments(
    geometry,
    new THREE.LineBasicMaterial({ color })
  );
}

function vertexPoints(bundle: Bundle, labels: number[], size: number): THREE.Points {
  const positions = new Float32Array(labels.length * 3);
  let k = 0;
  for (const label of labels) {
    const [x, y, z] = bundle.points[label - 1];
    positions[k++] = x;
    positions[k++] = y;
    positions[k++] = z;
  }
  const geometry = new THREE.BufferGeometry();
  geometry.setAttribute("position", new THREE.BufferAttribute(positions, 3));
  return new THREE.Points(
    geometry,
    new THREE.PointsMaterial({ color: COLORS.vertex, size, sizeAttenuation: true })
  );
}

/** Deterministic scene for one family member: same inputs, same nodes. */
export function buildSceneGroup(
  bundle: Bundle,
  lists: DrawLists,
  toggles: ClassToggles,
  pointSize: number
): THREE.Group {
  const group = new THREE.Group();
  if (toggles.triangles && toggles.regular && lists.regularTriangles.length) {
    group.add(triangleMesh(bundle, lists.regularTriangles, COLORS.regular));
  }
  if (toggles.triangles && toggles.singular && lists.singularTriangles.length) {
    group.add(triangleMesh(bundle, lists.singularTriangles, COLORS.singular));
  }
  if (toggles.triangles && toggles.interior && lists.interiorTriangles.length) {
    group.add(
      triangleMesh(bundle, lists.interiorTriangles, COLORS.interior, 0.35)
    );
  }
  if (toggles.edges && toggles.singular && lists.singularEdges.length) {
    group.add(edgeLines(bundle, lists.singularEdges, COLORS.edge));
  }
  if (toggles.vertices && toggles.singular && lists.singularVertices.length) {
    group.add(vertexPoints(bundle, lists.singularVertices, pointSize));
  }
  return group;
}

export function boundingSphere(bundle: Bundle): { center: THREE.Vector3; radius: number } {
  const box = new THREE.Box3();
  for (const [x, y, z] of bundle.points) {
    box.expandByPoint(new THREE.Vector3(x, y, z));
  }
  const center = new THREE.Vector3();
  box.getCenter(center);
  const size = new THREE.Vector3();
  box.getSize(size);
  return { center, radius: Math.max(size.length() / 2, 1) };
}
