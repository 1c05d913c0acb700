#pragma once

#include "doodle/doodle.hpp"

namespace doodle::fix {

/// Crossing-free circle: empty map, one free loop at root.
inline Doodle circle() {
  Doodle d;
  d.freeLoops.push_back({"a", Containment::root()});
  return d;
}

/// Figure-eight, lobes side by side: rotation (0,1,2,3) at the single vertex,
/// lobe edges {0,1} and {2,3}.  Faces: {0}, {1,3}, {2}; outer is the
/// length-2 face {1,3}.
inline Doodle figure_eight() {
  Doodle d;
  for (int i = 0; i < 4; ++i) d.map.add_dart();
  d.map.make_vertex({0, 1, 2, 3});
  d.map.link_edge(0, 1);
  d.map.link_edge(2, 3);
  d.outerFaceRep = {1};
  d.nesting = {Containment::root()};
  return d;
}

/// Same map as the figure-eight but with a length-1 face outside: a big loop
/// with a small loop drawn inside it.
inline Doodle curl() {
  Doodle d = figure_eight();
  d.outerFaceRep = {2};
  return d;
}

/// Two circles crossing twice.  Vertices A = (0,1,2,3), B = (4,5,6,7);
/// the lens is the face {0,4}, the outer face is {2,6}.
inline Doodle two_circle_lens() {
  Doodle d;
  for (int i = 0; i < 8; ++i) d.map.add_dart();
  d.map.make_vertex({0, 1, 2, 3});
  d.map.make_vertex({4, 5, 6, 7});
  d.map.link_edge(0, 5);  // lens lower arc
  d.map.link_edge(4, 1);  // lens upper arc
  d.map.link_edge(2, 7);  // far arc of circle 1
  d.map.link_edge(3, 6);  // far arc of circle 2
  d.outerFaceRep = {2};
  d.nesting = {Containment::root()};
  return d;
}

/// Standard trefoil shadow: 3 crossings; the curve runs the inner triangle
/// V0 -> V1 -> V2 and then the three outer leaves.  Rotation at Vi (CCW):
/// (leaf-to-prev, leaf-to-next, tri-to-next, tri-to-prev), darts 4i..4i+3.
/// Faces: three length-2 leaves, the length-3 center {2,6,10}, and the
/// length-3 outer face {0,4,8}.
inline Doodle trefoil_shadow() {
  Doodle d;
  for (int i = 0; i < 12; ++i) d.map.add_dart();
  for (int i = 0; i < 3; ++i)
    d.map.make_vertex({4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3});
  for (int i = 0; i < 3; ++i) d.map.link_edge(4 * i + 2, 4 * ((i + 1) % 3) + 3);  // triangle
  for (int i = 0; i < 3; ++i) d.map.link_edge(4 * i + 1, 4 * ((i + 1) % 3) + 0);  // leaves
  d.outerFaceRep = {0};
  d.nesting = {Containment::root()};
  return d;
}

/// The octahedron as a doodle: 4-regular, all faces triangles, irreducible.
/// Outer triangle A=0, B=1, C=2; inner triangle a=3, b=4, c=5.  Rotations
/// taken from the standard plane drawing (outer triangle CCW: A top, B lower
/// left, C lower right; inner triangle a bottom, b upper right, c upper left).
inline Doodle octahedron() {
  Doodle d;
  for (int i = 0; i < 24; ++i) d.map.add_dart();
  // Dart 4v+k is the k-th dart of vertex v's CCW rotation:
  //   A: (B, c, b, C)   B: (C, a, c, A)   C: (A, b, a, B)
  //   a: (b, c, B, C)   b: (A, c, a, C)   c: (b, A, B, a)
  for (int v = 0; v < 6; ++v)
    d.map.make_vertex({4 * v, 4 * v + 1, 4 * v + 2, 4 * v + 3});
  d.map.link_edge(0, 7);    // A-B
  d.map.link_edge(3, 8);    // A-C
  d.map.link_edge(4, 11);   // B-C
  d.map.link_edge(2, 16);   // A-b
  d.map.link_edge(1, 21);   // A-c
  d.map.link_edge(5, 14);   // B-a
  d.map.link_edge(6, 22);   // B-c
  d.map.link_edge(10, 15);  // C-a
  d.map.link_edge(9, 19);   // C-b
  d.map.link_edge(12, 18);  // a-b
  d.map.link_edge(13, 23);  // a-c
  d.map.link_edge(17, 20);  // b-c
  d.outerFaceRep = {3};     // face {3, 11, 7}: the outer triangle walked A->C->B
  d.nesting = {Containment::root()};
  return d;
}

}  // namespace doodle::fix
