use std::collections::BTreeMap;
use std::sync::Arc;

use super::{TreeConfig, VerkleError, VerkleKey, VerkleProof, BRANCHING_FACTOR};
use crate::exec::Exec;
use crate::pc::{commitment_to_scalar, Commitment, Scalar, TrustedSetup, VectorCommitter};

#[derive(Clone, Copy, Debug)]
struct Committed {
    commitment: Commitment,
    /// The commitment mapped into the parent's vector.
    scalar: Scalar,
}

#[derive(Clone, Debug, Default)]
struct InternalNode {
    children: BTreeMap<u8, Node>,
    cache: Option<Committed>,
}

#[derive(Clone, Debug, Default)]
struct LeafNode {
    values: BTreeMap<u8, Scalar>,
    cache: Option<Committed>,
}

#[derive(Clone, Debug)]
enum Node {
    Internal(InternalNode),
    Leaf(LeafNode),
}

impl Node {
    fn cache(&self) -> Option<Committed> {
        match self {
            Node::Internal(n) => n.cache,
            Node::Leaf(n) => n.cache,
        }
    }

    fn commit(&mut self, vc: &VectorCommitter, exec: Exec) -> Committed {
        match self {
            Node::Internal(n) => n.commit(vc, exec),
            Node::Leaf(n) => n.commit(vc),
        }
    }

    fn committed(&self) -> Committed {
        self.cache().expect("subtree committed whenever the root is")
    }
}

fn finish(commitment: Commitment) -> Committed {
    Committed { commitment, scalar: commitment_to_scalar(&commitment) }
}

impl InternalNode {
    fn commit(&mut self, vc: &VectorCommitter, exec: Exec) -> Committed {
        if let Some(c) = self.cache {
            return c;
        }
        let mut stale: Vec<&mut Node> = self.children.values_mut().filter(|c| c.cache().is_none()).collect();
        exec.for_each_mut(&mut stale, |child| {
            child.commit(vc, exec);
        });
        let entries = self.children.iter().map(|(i, c)| (*i as usize, c.committed().scalar));
        let c = finish(vc.commit_sparse(entries));
        self.cache = Some(c);
        c
    }

    fn vector(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); BRANCHING_FACTOR];
        for (i, c) in &self.children {
            v[*i as usize] = c.committed().scalar;
        }
        v
    }
}

impl LeafNode {
    fn commit(&mut self, vc: &VectorCommitter) -> Committed {
        if let Some(c) = self.cache {
            return c;
        }
        let c = finish(vc.commit_sparse(self.values.iter().map(|(i, v)| (*i as usize, *v))));
        self.cache = Some(c);
        c
    }

    fn vector(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); BRANCHING_FACTOR];
        for (i, x) in &self.values {
            v[*i as usize] = *x;
        }
        v
    }
}

/// Verkle tree with a fixed number of internal layers.
///
/// Mutation takes `&mut self` and invalidates cached commitments along the
/// touched path. After [`VerkleTree::commit`], proof generation only reads,
/// so a committed tree can serve proofs from many threads.
#[derive(Clone, Debug)]
pub struct VerkleTree {
    config: TreeConfig,
    committer: Arc<VectorCommitter>,
    root: InternalNode,
    len: usize,
    exec: Exec,
}

impl VerkleTree {
    /// Builds the Lagrange-basis committer from `setup`. Prefer
    /// [`VerkleTree::with_committer`] when creating many trees.
    pub fn create(config: TreeConfig, setup: Arc<TrustedSetup>) -> Result<Self, VerkleError> {
        config.validate()?;
        let vc = VectorCommitter::new(setup, config.branching_factor)?;
        Self::with_committer(config, Arc::new(vc))
    }

    pub fn with_committer(config: TreeConfig, committer: Arc<VectorCommitter>) -> Result<Self, VerkleError> {
        config.validate()?;
        if committer.width() != config.branching_factor {
            return Err(VerkleError::BranchingFactor(committer.width()));
        }
        Ok(VerkleTree { config, committer, root: InternalNode::default(), len: 0, exec: Exec::default() })
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn config(&self) -> &TreeConfig {
        &self.config
    }

    pub fn setup(&self) -> &Arc<TrustedSetup> {
        self.committer.setup()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn check_key(&self, key: &VerkleKey) -> Result<(), VerkleError> {
        if key.stem.len() != self.config.stem_width {
            return Err(VerkleError::KeyWidth { expected: self.config.stem_width, actual: key.stem.len() });
        }
        Ok(())
    }

    /// Inserts or overwrites. Zero is the empty-slot marker and is rejected.
    pub fn insert(&mut self, key: &VerkleKey, value: Scalar) -> Result<(), VerkleError> {
        self.check_key(key)?;
        if value.is_zero() {
            return Err(VerkleError::ZeroValue);
        }
        let last = key.stem.len() - 1;
        let mut node = &mut self.root;
        for (depth, byte) in key.stem.iter().enumerate() {
            node.cache = None;
            let child = node.children.entry(*byte).or_insert_with(|| {
                if depth == last {
                    Node::Leaf(LeafNode::default())
                } else {
                    Node::Internal(InternalNode::default())
                }
            });
            match child {
                Node::Internal(inner) => node = inner,
                Node::Leaf(leaf) => {
                    leaf.cache = None;
                    if leaf.values.insert(key.leaf_index, value).is_none() {
                        self.len += 1;
                    }
                    return Ok(());
                }
            }
        }
        unreachable!("the last stem byte always selects a leaf")
    }

    fn leaf(&self, key: &VerkleKey) -> Option<&LeafNode> {
        let mut node = &self.root;
        for byte in &key.stem {
            match node.children.get(byte)? {
                Node::Internal(inner) => node = inner,
                Node::Leaf(leaf) => return Some(leaf),
            }
        }
        None
    }

    pub fn get(&self, key: &VerkleKey) -> Option<Scalar> {
        if key.stem.len() != self.config.stem_width {
            return None;
        }
        self.leaf(key)?.values.get(&key.leaf_index).copied()
    }

    /// Recomputes stale commitments bottom-up and returns the root.
    pub fn commit(&mut self) -> Commitment {
        self.root.commit(&self.committer, self.exec).commitment
    }

    /// Root commitment if the tree is unchanged since the last commit.
    pub fn root_commitment(&self) -> Option<Commitment> {
        self.root.cache.map(|c| c.commitment)
    }

    /// Membership proof for `key`. Requires a prior [`VerkleTree::commit`].
    pub fn generate_proof(&self, key: &VerkleKey) -> Result<VerkleProof, VerkleError> {
        self.check_key(key)?;
        if self.root.cache.is_none() {
            return Err(VerkleError::NotCommitted);
        }
        let w = self.config.stem_width;
        let mut internal_proofs = Vec::with_capacity(w);
        let mut internal_child_commitments = Vec::with_capacity(w);
        let mut node = &self.root;
        let mut leaf = None;
        for byte in &key.stem {
            let child = node.children.get(byte).ok_or(VerkleError::NotFound)?;
            internal_proofs.push(self.committer.open(&node.vector(), *byte as usize)?);
            internal_child_commitments.push(child.committed().commitment);
            match child {
                Node::Internal(inner) => node = inner,
                Node::Leaf(l) => leaf = Some(l),
            }
        }
        let leaf = leaf.expect("stem walk ends at a leaf");
        if !leaf.values.contains_key(&key.leaf_index) {
            return Err(VerkleError::NotFound);
        }
        let leaf_proof = self.committer.open(&leaf.vector(), key.leaf_index as usize)?;
        Ok(VerkleProof {
            stem: key.stem.clone(),
            leaf_index: key.leaf_index,
            indices: key.stem.clone(),
            internal_proofs,
            internal_child_commitments,
            leaf_proof,
        })
    }

    /// Commits if needed, then proves.
    pub fn prove(&mut self, key: &VerkleKey) -> Result<VerkleProof, VerkleError> {
        self.commit();
        self.generate_proof(key)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verkle::verify_proof_local;
    use std::sync::OnceLock;

    fn committer() -> Arc<VectorCommitter> {
        static VC: OnceLock<Arc<VectorCommitter>> = OnceLock::new();
        VC.get_or_init(|| {
            let setup = Arc::new(TrustedSetup::generate(b"tree-unit", 255).unwrap());
            Arc::new(VectorCommitter::new(setup, 256).unwrap())
        })
        .clone()
    }

    fn tree(w: usize) -> VerkleTree {
        VerkleTree::with_committer(TreeConfig::new(w).unwrap(), committer()).unwrap()
    }

    fn key(stem: &[u8], idx: u8) -> VerkleKey {
        VerkleKey::new(stem.to_vec(), idx)
    }

    #[test]
    fn empty_tree() {
        let mut t = tree(1);
        assert!(t.get(&key(&[1], 2)).is_none());
        assert!(t.commit().0.is_identity());
        assert!(t.is_empty());
    }

    #[test]
    fn insert_get_overwrite() {
        let mut t = tree(2);
        let k = key(&[1, 2], 3);
        t.insert(&k, Scalar::from_u64(5)).unwrap();
        assert_eq!(t.get(&k), Some(Scalar::from_u64(5)));
        t.insert(&k, Scalar::from_u64(6)).unwrap();
        assert_eq!(t.get(&k), Some(Scalar::from_u64(6)));
        assert_eq!(t.len(), 1);
        assert!(t.get(&key(&[1, 2], 4)).is_none());
        assert!(t.get(&key(&[1, 3], 3)).is_none());
    }

    #[test]
    fn insert_rejects_zero_and_bad_width() {
        let mut t = tree(2);
        assert_eq!(t.insert(&key(&[1, 2], 0), Scalar::zero()), Err(VerkleError::ZeroValue));
        assert_eq!(
            t.insert(&key(&[1], 0), Scalar::one()),
            Err(VerkleError::KeyWidth { expected: 2, actual: 1 })
        );
    }

    #[test]
    fn mutation_invalidates_root() {
        let mut t = tree(1);
        t.insert(&key(&[1], 1), Scalar::one()).unwrap();
        let r1 = t.commit();
        assert_eq!(t.root_commitment(), Some(r1));
        t.insert(&key(&[9], 1), Scalar::one()).unwrap();
        assert_eq!(t.root_commitment(), None);
        assert_eq!(t.generate_proof(&key(&[1], 1)), Err(VerkleError::NotCommitted));
        let r2 = t.commit();
        assert_ne!(r1, r2);
        // commit is idempotent
        assert_eq!(t.commit(), r2);
    }

    #[test]
    fn proofs_and_not_found() {
        let mut t = tree(2);
        let k = key(&[7, 8], 9);
        t.insert(&k, Scalar::from_u64(77)).unwrap();
        t.insert(&key(&[7, 1], 9), Scalar::from_u64(78)).unwrap();
        let root = t.commit();
        let p = t.generate_proof(&k).unwrap();
        assert_eq!(p.internal_proofs.len(), 2);
        assert_eq!(p.indices, vec![7, 8]);
        assert_eq!(verify_proof_local(t.setup(), &root, &k, &Scalar::from_u64(77), &p), Ok(true));
        assert_eq!(t.generate_proof(&key(&[7, 8], 10)), Err(VerkleError::NotFound));
        assert_eq!(t.generate_proof(&key(&[6, 8], 9)), Err(VerkleError::NotFound));
    }

    #[test]
    fn sequential_and_parallel_commit_agree() {
        let mut a = tree(2);
        let mut b = tree(2).with_exec(Exec::Sequential);
        for i in 0..40u8 {
            let k = key(&[i % 5, i], i.wrapping_mul(7));
            a.insert(&k, Scalar::from_u64(i as u64 + 1)).unwrap();
            b.insert(&k, Scalar::from_u64(i as u64 + 1)).unwrap();
        }
        assert_eq!(a.commit(), b.commit());
    }
}
