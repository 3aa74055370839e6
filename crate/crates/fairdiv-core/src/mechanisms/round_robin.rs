//! The round-robin mechanism.

use crate::error::Result;
use crate::instance::Instance;
use crate::ordering::AgentOrdering;
use crate::Allocation;

/// Agents pick in position order, over and over, until no goods remain.
/// Each pick takes the smallest-index good among those of maximum utility to
/// the picker; in the final partial round, agents beyond the remaining good
/// count receive nothing.
pub fn round_robin(inst: &Instance, ordering: &AgentOrdering) -> Result<Allocation> {
    super::check_dimensions(inst, ordering)?;
    let m = inst.good_count();
    let mut taken = alloc::vec![false; m];
    let mut remaining = m;
    let mut allocation = Allocation::empty(inst.agent_count());
    while remaining > 0 {
        for &agent in ordering.positions() {
            let mut pick: Option<usize> = None;
            for (g, gone) in taken.iter().enumerate() {
                if *gone {
                    continue;
                }
                match pick {
                    // Strict comparison keeps the smallest index on ties.
                    Some(best) if inst.utility(agent, g) <= inst.utility(agent, best) => {}
                    _ => pick = Some(g),
                }
            }
            let Some(g) = pick else { break };
            taken[g] = true;
            remaining -= 1;
            allocation.bundle_mut(agent).insert(g);
        }
    }
    Ok(allocation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::instance::validate_allocation;
    use crate::Bundle;

    fn bundle(goods: &[usize]) -> Bundle {
        goods.iter().copied().collect()
    }

    #[test]
    fn fixture_under_identity_ordering() {
        let inst = generators::example4();
        let alloc = round_robin(&inst, &AgentOrdering::identity(4)).unwrap();
        assert_eq!(alloc.bundle(0), &bundle(&[0, 4]));
        assert_eq!(alloc.bundle(1), &bundle(&[1]));
        assert_eq!(alloc.bundle(2), &bundle(&[2]));
        assert_eq!(alloc.bundle(3), &bundle(&[3]));
        assert!(validate_allocation(&inst, &alloc).is_ok());
    }

    #[test]
    fn fixture_under_reversed_ordering() {
        let inst = generators::example4();
        let alloc = round_robin(&inst, &AgentOrdering::reversed(4)).unwrap();
        assert_eq!(alloc.bundle(0), &bundle(&[3]));
        assert_eq!(alloc.bundle(1), &bundle(&[4]));
        assert_eq!(alloc.bundle(2), &bundle(&[0]));
        assert_eq!(alloc.bundle(3), &bundle(&[1, 2]));
    }

    #[test]
    fn no_goods_means_empty_bundles() {
        let inst = Instance::new(alloc::vec![alloc::vec![], alloc::vec![], alloc::vec![]]).unwrap();
        let alloc = round_robin(&inst, &AgentOrdering::reversed(3)).unwrap();
        assert!(alloc.bundles().iter().all(|b| b.is_empty()));
    }
}
