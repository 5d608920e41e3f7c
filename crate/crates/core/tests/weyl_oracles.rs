use std::collections::{HashMap, HashSet};

use twisted_leaves::rootdata::TypeLabel;
use twisted_leaves::weyl::{bruhat_leq, inversions, WeylElement, WeylGroup};

/// Tableau criterion: `u ≤ w` iff every sorted prefix of `u` is entrywise
/// below the sorted prefix of `w` of the same size.
fn tableau_leq(u: &[usize], w: &[usize]) -> bool {
    (1..=u.len()).all(|k| {
        let mut a = u[..k].to_vec();
        let mut b = w[..k].to_vec();
        a.sort_unstable();
        b.sort_unstable();
        a.iter().zip(&b).all(|(x, y)| x <= y)
    })
}

#[test]
fn bruhat_order_matches_tableau_criterion() {
    for n in 1..=4 {
        let group = WeylGroup::type_a(n).unwrap();
        let elements = group.elements().unwrap();
        for u in elements {
            let pu = u.perm().unwrap();
            for w in elements {
                let pw = w.perm().unwrap();
                assert_eq!(bruhat_leq(u, w).unwrap(), tableau_leq(&pu, &pw), "S_{}: {u} vs {w}", n + 1);
            }
        }
    }
}

#[test]
fn length_is_inversion_count() {
    for n in 1..=4 {
        let group = WeylGroup::type_a(n).unwrap();
        for w in group.elements().unwrap() {
            assert_eq!(w.length(), inversions(&w.perm().unwrap()));
        }
        assert_eq!(group.order(), (1..=n + 1).product::<usize>());
        assert_eq!(group.longest().length(), n * (n + 1) / 2);
    }
}

/// Bruhat order of D4 as the transitive closure of `w → w t` with `l(w t) > l(w)`.
#[test]
fn d4_bruhat_order_is_reflection_closure() {
    let group = WeylGroup::of_type(TypeLabel::D4).unwrap();
    let elements = group.elements().unwrap();
    assert_eq!(elements.len(), 192);
    assert_eq!(group.longest().length(), 12);
    let reflections = group.reflections();
    assert_eq!(reflections.len(), 12);
    let index: HashMap<&WeylElement, usize> = elements.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let up: Vec<Vec<usize>> = elements
        .iter()
        .map(|w| {
            reflections
                .iter()
                .map(|t| w.compose(t).unwrap())
                .filter(|x| x.length() > w.length())
                .map(|x| index[&x])
                .collect()
        })
        .collect();
    for (i, u) in elements.iter().enumerate() {
        let mut above: HashSet<usize> = HashSet::from([i]);
        let mut stack = vec![i];
        while let Some(x) = stack.pop() {
            for &y in &up[x] {
                if above.insert(y) {
                    stack.push(y);
                }
            }
        }
        for (j, w) in elements.iter().enumerate() {
            assert_eq!(bruhat_leq(u, w).unwrap(), above.contains(&j), "D4: {u} vs {w}");
        }
    }
}

#[test]
fn reduced_words_have_the_right_length() {
    let group = WeylGroup::of_type(TypeLabel::D4).unwrap();
    for w in group.elements().unwrap() {
        assert_eq!(w.word().len(), w.length());
        assert_eq!(group.from_word(w.word()).unwrap(), *w);
    }
}
