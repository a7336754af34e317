use std::collections::BTreeSet;

use super::{face_lattice, Cone};
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;

/// A fan: cones given as index sets into a global ray list.
#[derive(Clone, Debug)]
pub struct Fan {
    rank: usize,
    rays: Vec<LatticeVector>,
    cones: Vec<Vec<usize>>,
    complete: bool,
}

impl Fan {
    /// Takes the cone list as given (it need not be closed under faces).
    pub fn new(rank: usize, rays: Vec<LatticeVector>, cones: Vec<Vec<usize>>) -> Result<Fan> {
        let rays = rays
            .into_iter()
            .map(|r| {
                if r.rank() != rank {
                    Err(Error::RankMismatch { expected: rank, got: r.rank() })
                } else {
                    r.primitive()
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let mut normalized = BTreeSet::new();
        for cone in cones {
            let mut c = cone.clone();
            c.sort_unstable();
            c.dedup();
            if let Some(&bad) = c.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::InvalidInput(format!("ray index {bad} out of range")));
            }
            let built = Cone::new(rank, c.iter().map(|&i| rays[i].clone()).collect())?;
            if built.rays().len() != c.len() {
                return Err(Error::InvalidInput(format!(
                    "cone {cone:?} lists a ray that is not extreme"
                )));
            }
            normalized.insert(c);
        }
        let mut cones: Vec<Vec<usize>> = normalized.into_iter().collect();
        cones.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let mut fan = Fan { rank, rays, cones, complete: false };
        fan.complete = fan.covers_sample();
        Ok(fan)
    }

    /// Fan generated by the given cones and all of their faces.
    pub fn generated_by(rank: usize, rays: Vec<LatticeVector>, maximal: Vec<Vec<usize>>) -> Result<Fan> {
        let fan = Fan::new(rank, rays, maximal)?;
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for c in &fan.cones {
            let cone = fan.cone(c);
            for face in face_lattice(&cone).faces {
                let mut global: Vec<usize> = face
                    .rays
                    .iter()
                    .map(|&i| c[fan.local_position(c, &cone, i)])
                    .collect();
                global.sort_unstable();
                all.insert(global);
            }
        }
        Fan::new(rank, fan.rays, all.into_iter().collect())
    }

    fn local_position(&self, indices: &[usize], cone: &Cone, local: usize) -> usize {
        let r = &cone.rays()[local];
        indices.iter().position(|&g| &self.rays[g] == r).expect("cone ray comes from the fan")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn cone(&self, indices: &[usize]) -> Cone {
        Cone::new(self.rank, indices.iter().map(|&i| self.rays[i].clone()).collect())
            .expect("validated at construction")
    }

    pub fn dim_of(&self, indices: &[usize]) -> usize {
        self.cone(indices).dim()
    }

    /// Cones not properly contained in another listed cone.
    pub fn maximal_cones(&self) -> Vec<Vec<usize>> {
        self.cones
            .iter()
            .filter(|c| {
                !self
                    .cones
                    .iter()
                    .any(|d| d.len() > c.len() && c.iter().all(|i| d.contains(i)))
            })
            .cloned()
            .collect()
    }

    /// Errors with the first missing face if the list is not face-closed.
    pub fn check_face_closed(&self) -> Result<()> {
        let listed: BTreeSet<&Vec<usize>> = self.cones.iter().collect();
        for c in &self.cones {
            let cone = self.cone(c);
            for face in face_lattice(&cone).faces {
                let mut global: Vec<usize> =
                    face.rays.iter().map(|&i| c[self.local_position(c, &cone, i)]).collect();
                global.sort_unstable();
                if !listed.contains(&global) {
                    return Err(Error::FanNotFaceClosed(global));
                }
            }
        }
        Ok(())
    }

    /// Every nonzero direction in `{-3..3}^n` lies in some maximal cone.
    fn covers_sample(&self) -> bool {
        let maximal: Vec<Cone> = self.maximal_cones().iter().map(|c| self.cone(c)).collect();
        if maximal.iter().any(|c| !c.is_full_dimensional()) || maximal.is_empty() {
            return false;
        }
        let n = self.rank;
        let mut v = vec![-3i64; n];
        loop {
            if v.iter().any(|&x| x != 0) {
                let lv = LatticeVector::from_i64(&v);
                if !maximal.iter().any(|c| c.contains(&lv, false)) {
                    return false;
                }
            }
            let mut i = 0;
            loop {
                if i == n {
                    return true;
                }
                v[i] += 1;
                if v[i] <= 3 {
                    break;
                }
                v[i] = -3;
                i += 1;
            }
        }
    }
}
