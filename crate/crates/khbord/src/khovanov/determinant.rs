//! Knot determinant from a Goeritz matrix.

use std::collections::VecDeque;

use super::diagram::LinkDiagram;
use super::KhError;

/// Faces of the projection. Corner `(c, p)` is the region between slots `p` and `p+1` of crossing `c`.
fn faces(d: &LinkDiagram) -> (Vec<Vec<(usize, u8)>>, Vec<[usize; 4]>) {
    let partner = d.partner();
    let n = d.len();
    let mut face_of = vec![[usize::MAX; 4]; n];
    let mut faces = Vec::new();
    for c in 0..n {
        for p in 0..4u8 {
            // Walk from dart (c, p): cross the arc, then turn to the next slot counter-clockwise.
            let start = partner[&(c, p)];
            if face_of[start.0][start.1 as usize] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut corners = Vec::new();
            let mut e = start;
            while face_of[e.0][e.1 as usize] == usize::MAX {
                face_of[e.0][e.1 as usize] = id;
                corners.push(e);
                e = partner[&(e.0, (e.1 + 1) % 4)];
            }
            faces.push(corners);
        }
    }
    (faces, face_of)
}

/// |det| of a knot diagram. Multi-component and non-planar diagrams are rejected.
pub fn determinant(d: &LinkDiagram) -> Result<u64, KhError> {
    let components = d.components();
    if components != 1 {
        return Err(KhError::MultiComponent { components });
    }
    let n = d.len();
    if n == 0 {
        return Ok(1);
    }
    let (faces, face_of) = faces(d);
    if faces.len() != n + 2 {
        return Err(KhError::NonPlanar { faces: faces.len(), expected: n + 2 });
    }

    // Checkerboard: opposite corners share a colour, adjacent corners differ.
    let mut colour: Vec<Option<bool>> = vec![None; faces.len()];
    colour[0] = Some(false);
    let mut queue = VecDeque::from([0usize]);
    while let Some(f) = queue.pop_front() {
        let cf = colour[f].unwrap();
        for &(c, p) in &faces[f] {
            for (q, same) in [((p + 1) % 4, false), ((p + 2) % 4, true), ((p + 3) % 4, false)] {
                let g = face_of[c][q as usize];
                let want = if same { cf } else { !cf };
                match colour[g] {
                    Some(x) if x != want => return Err(KhError::NonPlanar { faces: faces.len(), expected: n + 2 }),
                    Some(_) => {}
                    None => {
                        colour[g] = Some(want);
                        queue.push_back(g);
                    }
                }
            }
        }
    }

    let shaded: Vec<usize> = (0..faces.len()).filter(|&f| colour[f] == Some(true)).collect();
    let index = |f: usize| shaded.iter().position(|&s| s == f);
    let m = shaded.len();
    let mut g = vec![vec![0i128; m]; m];
    for c in 0..n {
        let (a, b, eta) = if colour[face_of[c][0]] == Some(true) {
            (face_of[c][0], face_of[c][2], 1)
        } else {
            (face_of[c][1], face_of[c][3], -1)
        };
        if a == b {
            continue;
        }
        let (i, j) = (index(a).unwrap(), index(b).unwrap());
        g[i][j] -= eta;
        g[j][i] -= eta;
        g[i][i] += eta;
        g[j][j] += eta;
    }
    if m <= 1 {
        return Ok(1);
    }
    let minor: Vec<Vec<i128>> = g[1..].iter().map(|row| row[1..].to_vec()).collect();
    Ok(bareiss(minor).unsigned_abs() as u64)
}

/// Exact integer determinant by fraction-free elimination.
fn bareiss(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}
