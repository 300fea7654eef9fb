//! A hand-built offender in `3 x PSL(2,7)` acting on 11 points.

use crate::error::Result;
use crate::group::{build_group, GroupTable};
use crate::ingleton::Quadruple;
use crate::spec::GroupSpec;
use crate::subgroup::Subgroup;

pub struct ExampleQuadruple {
    pub group: GroupTable,
    pub quadruple: Quadruple,
}

/// `H1 = ⟨g, x⟩`, `H2 = ⟨h, x⟩`, `H3 = ⟨g, h^x⟩`, `H4 = ⟨h, g^x⟩` with
/// `g = (1,2,3)(6,9,10)(7,8,11)`, `h = (1,2,3)(4,10,5)(6,9,7)` and
/// `x = (4,11)(5,10)(6,9)(7,8)`.
pub fn example_3xpsl27() -> Result<ExampleQuadruple> {
    let group = build_group(&GroupSpec::named("three_x_psl27", &[]))?;
    let g = group.find_perm("(1,2,3)(6,9,10)(7,8,11)")?;
    let h = group.find_perm("(1,2,3)(4,10,5)(6,9,7)")?;
    let x = group.find_perm("(4,11)(5,10)(6,9)(7,8)")?;
    let sub = |a, b| Subgroup::generated(&group, &[a, b]);
    let quadruple = Quadruple::new(
        sub(g, x)?,
        sub(h, x)?,
        sub(g, group.conj(h, x))?,
        sub(h, group.conj(g, x))?,
    )?;
    Ok(ExampleQuadruple { group, quadruple })
}
