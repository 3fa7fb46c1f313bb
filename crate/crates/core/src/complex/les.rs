use super::{mapping_cone, shift, ChainMap, Cohomology};
use crate::zmodule::{FpGroup, GroupMorphism, Int, IntMatrix};

/// `g∘f = 0` and `ker g ⊆ im f`.
pub fn exact_at(f: &GroupMorphism, g: &GroupMorphism) -> bool {
    assert_eq!(
        f.dst().n_gens(),
        g.src().n_gens(),
        "exactness at mismatched groups"
    );
    if !g.compose(f).is_zero() {
        return false;
    }
    let (_, inc) = g.kernel();
    inc.matrix()
        .columns()
        .iter()
        .all(|k| f.preimage(k).is_some())
}

#[derive(Clone, Debug)]
pub struct LesNode {
    pub label: String,
    pub group: FpGroup,
}

/// A finite sequence of groups and maps `maps[k]: nodes[k] -> nodes[k+1]`.
#[derive(Clone, Debug)]
pub struct LongExactSequence {
    pub nodes: Vec<LesNode>,
    pub maps: Vec<GroupMorphism>,
}

impl LongExactSequence {
    pub fn new() -> Self {
        LongExactSequence {
            nodes: vec![],
            maps: vec![],
        }
    }

    pub fn push_node(&mut self, label: impl Into<String>, group: FpGroup) {
        self.nodes.push(LesNode {
            label: label.into(),
            group,
        });
    }

    pub fn push_map(&mut self, m: GroupMorphism) {
        assert_eq!(self.maps.len() + 1, self.nodes.len(), "map before node");
        self.maps.push(m);
    }

    /// Exactness at every interior node, labelled.
    pub fn exactness(&self) -> Vec<(String, bool)> {
        (1..self.nodes.len().saturating_sub(1))
            .map(|k| {
                (
                    self.nodes[k].label.clone(),
                    exact_at(&self.maps[k - 1], &self.maps[k]),
                )
            })
            .collect()
    }

    pub fn is_exact(&self) -> bool {
        self.exactness().iter().all(|(_, ok)| *ok)
    }
}

impl Default for LongExactSequence {
    fn default() -> Self {
        Self::new()
    }
}

/// Connecting map `H^n(C) -> H^{n+1}(A)` of a degreewise short exact
/// sequence `A -i-> B -p-> C`, by lifting, differentiating and pulling back.
pub fn connecting_map(i: &ChainMap, p: &ChainMap, n: i32) -> GroupMorphism {
    let (a, b, c) = (i.src(), i.dst(), p.dst());
    let hc: Cohomology = c.cohomology(n);
    let ha = a.cohomology(n + 1);
    let pn = p.component(n);
    let in1 = i.component(n + 1);
    let db = b.diff_matrix(n);
    let cols: Vec<Vec<Int>> = hc
        .cycles
        .columns()
        .iter()
        .map(|z| {
            let lift = pn.preimage(z).expect("projection is degreewise surjective");
            let bnd = db.mul_vec(&lift);
            let back = in1
                .preimage(&bnd)
                .expect("boundary of a lift comes from the subcomplex");
            ha.class_of(&back)
                .expect("pulled back element is a cocycle")
        })
        .collect();
    GroupMorphism::new_unchecked(
        hc.group.clone(),
        ha.group.clone(),
        IntMatrix::from_columns(&cols, ha.group.n_gens()),
    )
}

/// The cohomology sequence of `dst -> MC(u) -> src[1]` over degrees
/// `[from, to]`; the maps `H^i(src) -> H^i(dst)` are connecting maps.
pub fn cone_les(u: &ChainMap, from: i32, to: i32) -> LongExactSequence {
    let mc = mapping_cone(u);
    let s1 = shift(u.src(), 1);
    let mut seq = LongExactSequence::new();
    for i in from..=to {
        if i == from {
            seq.push_node(format!("H^{i}(src)"), s1.cohomology(i - 1).group);
        }
        seq.push_map(connecting_map(&mc.inclusion, &mc.projection, i - 1));
        seq.push_node(format!("H^{i}(dst)"), u.dst().cohomology(i).group);
        seq.push_map(mc.inclusion.on_cohomology(i));
        seq.push_node(format!("H^{i}(MC)"), mc.complex.cohomology(i).group);
        seq.push_map(mc.projection.on_cohomology(i));
        seq.push_node(format!("H^{}(src)", i + 1), s1.cohomology(i).group);
    }
    seq
}

/// Cohomology sequence `H^n(A) -> H^n(B) -> H^n(C) -> H^{n+1}(A)` of a
/// degreewise split short exact sequence `A -i-> B -p-> C`, for `n` in
/// `[from, to]`.
pub fn ses_les(i: &ChainMap, p: &ChainMap, from: i32, to: i32) -> LongExactSequence {
    let (a, b, c) = (i.src(), i.dst(), p.dst());
    let mut seq = LongExactSequence::new();
    for n in from..=to {
        if n == from {
            seq.push_node(format!("H^{n}(A)"), a.cohomology(n).group);
        }
        seq.push_map(i.on_cohomology(n));
        seq.push_node(format!("H^{n}(B)"), b.cohomology(n).group);
        seq.push_map(p.on_cohomology(n));
        seq.push_node(format!("H^{n}(C)"), c.cohomology(n).group);
        seq.push_map(connecting_map(i, p, n));
        seq.push_node(format!("H^{}(A)", n + 1), a.cohomology(n + 1).group);
    }
    seq
}
