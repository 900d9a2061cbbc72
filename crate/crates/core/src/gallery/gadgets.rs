//! Division-by-three gadgets.
//!
//! `f[x,y,z]` is the 3×3 parallel table with rows `x = (0,1,2)`,
//! `y = (1,2,0)`, `z = (2,0,1)` over `A = {0̄,1̄,2̄}`, `B = {0,1,2}`. The six
//! arrangements of `C` are one problem in six guises. `f[x,y]` is the lazy
//! table that ties `K` to `x` and `Q` to `y` with the remaining point fixed.

use crate::bijection::{EqdFile, Labels, ProdBij};
use crate::error::{Error, Result};
use crate::perm::Perm;

use super::barred;
use super::lazy::{symbol_name, LazyBij, Tail, Value};

/// `order[k]` is the row (index into `c_labels`) that reads shift `k`.
pub fn gadget_f_xyz(order: [usize; 3], c_labels: &[String]) -> Result<EqdFile> {
    check_size(c_labels)?;
    let arrangement = Perm::from_images(order.to_vec())?;
    let mut rows = vec![Perm::identity(3); 3];
    for (shift, &row) in arrangement.images().iter().enumerate() {
        rows[row] = rotation(shift);
    }
    let bij = ProdBij::from_parallel_rows(3, &rows)?;
    Ok(EqdFile {
        bij,
        labels: Labels {
            a: Some((0..3).map(barred).collect()),
            b: Some((0..3).map(|j| j.to_string()).collect()),
            c: Some(c_labels.to_vec()),
        },
    })
}

fn rotation(k: usize) -> Perm {
    Perm::from_images_unchecked((0..3).map(|j| (j + k) % 3).collect())
}

/// `f[x,y]`: header columns run over `x, y, z` in that order; row `x` reads
/// `K` against them, row `y` reads `Q` against them with `x` and `y` swapped,
/// row `z` is `j ↦ (j, z)`.
pub fn gadget_f_xy(x: usize, y: usize, c_labels: &[String]) -> Result<LazyBij> {
    check_size(c_labels)?;
    if x >= 3 || y >= 3 || x == y {
        return Err(Error::Precondition("x and y must be distinct points of C".into()));
    }
    let z = 3 - x - y;
    let cols = [x, y, z];
    let swap = |c: usize| match c {
        c if c == x => y,
        c if c == y => x,
        c => c,
    };
    let mut header = vec![Vec::new(); 3];
    let mut tails = vec![Tail { offset: 0, out: 0 }; 3];
    header[x] = cols.iter().map(|&c| (Value::Symbol(0), c)).collect();
    header[y] = cols.iter().map(|&c| (Value::Symbol(1), swap(c))).collect();
    header[z] = (1..=3).map(|j| (Value::Int(j), z)).collect();
    tails[x] = Tail { offset: 3, out: x };
    tails[y] = Tail { offset: 3, out: y };
    tails[z] = Tail { offset: 0, out: z };
    LazyBij::new(
        c_labels.to_vec(),
        vec![symbol_name(0), symbol_name(1)],
        header,
        tails,
    )
}

fn check_size(c_labels: &[String]) -> Result<()> {
    if c_labels.len() != 3 {
        return Err(Error::Precondition(format!(
            "gadget needs |C| = 3, got {}",
            c_labels.len()
        )));
    }
    Ok(())
}
