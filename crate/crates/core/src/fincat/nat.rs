use crate::error::{Error, Result};
use crate::fincat::category::{Mor, Obj};
use crate::fincat::functor::Functor;

/// A natural transformation `source => target`, one component per object of
/// the common domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalTransformation {
    source: Functor,
    target: Functor,
    components: Vec<Mor>,
}

impl NaturalTransformation {
    pub fn new(source: Functor, target: Functor, components: Vec<Mor>) -> Result<Self> {
        let t = Self::unchecked(source, target, components)?;
        if let Some(f) = t.naturality_failure() {
            return Err(Error::InvalidTransformation(format!(
                "naturality square fails at {}",
                t.source.source().morphism_name(f)
            )));
        }
        Ok(t)
    }

    /// Checks only that the components have the right types; naturality is
    /// left to [`NaturalTransformation::naturality_failure`].
    pub fn unchecked(source: Functor, target: Functor, components: Vec<Mor>) -> Result<Self> {
        if source.source() != target.source() || source.target() != target.target() {
            return Err(Error::ShapeMismatch(
                "natural transformation between functors of different types".into(),
            ));
        }
        let (dom, cod) = (source.source(), source.target());
        if components.len() != dom.object_count() {
            return Err(Error::ShapeMismatch("component family is not total".into()));
        }
        for (o, &c) in components.iter().enumerate() {
            if c >= cod.morphism_count() || cod.source(c) != source.on_object(o) || cod.target(c) != target.on_object(o)
            {
                return Err(Error::ShapeMismatch(format!(
                    "component at {} has the wrong type",
                    dom.object_name(o)
                )));
            }
        }
        Ok(NaturalTransformation {
            source,
            target,
            components,
        })
    }

    /// First morphism of the domain whose naturality square does not commute.
    pub fn naturality_failure(&self) -> Option<Mor> {
        let dom = self.source.source();
        let cod = self.source.target();
        dom.morphisms().find(|&f| {
            let (a, b) = (dom.source(f), dom.target(f));
            cod.compose(self.target.on_morphism(f), self.components[a])
                != cod.compose(self.components[b], self.source.on_morphism(f))
        })
    }

    pub fn identity(f: &Functor) -> Self {
        let components = f
            .source()
            .objects()
            .map(|o| f.target().identity(f.on_object(o)))
            .collect();
        NaturalTransformation {
            source: f.clone(),
            target: f.clone(),
            components,
        }
    }

    pub fn source(&self) -> &Functor {
        &self.source
    }

    pub fn target(&self) -> &Functor {
        &self.target
    }

    pub fn component(&self, o: Obj) -> Mor {
        self.components[o]
    }

    pub fn components(&self) -> &[Mor] {
        &self.components
    }

    /// `self` precomposed with `g`: components `self_{g x}`.
    pub fn whisker_right(&self, g: &Functor) -> Result<Self> {
        let components = g.source().objects().map(|x| self.components[g.on_object(x)]).collect();
        Ok(NaturalTransformation {
            source: self.source.after(g)?,
            target: self.target.after(g)?,
            components,
        })
    }

    /// `h` applied to `self`: components `h(self_x)`.
    pub fn whisker_left(&self, h: &Functor) -> Result<Self> {
        let components = self.components.iter().map(|&c| h.on_morphism(c)).collect();
        Ok(NaturalTransformation {
            source: h.after(&self.source)?,
            target: h.after(&self.target)?,
            components,
        })
    }

    /// Vertical composite `next . self`.
    pub fn then(&self, next: &NaturalTransformation) -> Result<Self> {
        if self.target != next.source {
            return Err(Error::ShapeMismatch("transformations are not composable".into()));
        }
        let cod = self.source.target();
        let components = self
            .components
            .iter()
            .zip(&next.components)
            .map(|(&a, &b)| cod.compose(b, a))
            .collect();
        Ok(NaturalTransformation {
            source: self.source.clone(),
            target: next.target.clone(),
            components,
        })
    }

    /// Componentwise inverse, or the first object whose component is not invertible.
    pub fn inverse(&self) -> std::result::Result<Self, Obj> {
        let cod = self.source.target();
        let mut components = Vec::with_capacity(self.components.len());
        for (o, &c) in self.components.iter().enumerate() {
            components.push(cod.inverse(c).ok_or(o)?);
        }
        Ok(NaturalTransformation {
            source: self.target.clone(),
            target: self.source.clone(),
            components,
        })
    }

    /// All natural transformations `source => target`, in lexicographic order of components.
    pub fn enumerate(source: &Functor, target: &Functor) -> Vec<Self> {
        let cod = source.target().clone();
        let dom = source.source().clone();
        let choices: Vec<&[Mor]> = dom
            .objects()
            .map(|o| cod.hom(source.on_object(o), target.on_object(o)))
            .collect();
        let mut out = Vec::new();
        if choices.iter().any(|c| c.is_empty()) {
            return out;
        }
        let mut idx = vec![0usize; choices.len()];
        loop {
            let comps: Vec<Mor> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
            let t = NaturalTransformation {
                source: source.clone(),
                target: target.clone(),
                components: comps,
            };
            if t.naturality_failure().is_none() {
                out.push(t);
            }
            // odometer, last position fastest
            let mut k = choices.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::category::examples::*;

    #[test]
    fn naturality_is_checked() {
        let m = Arc::new(idempotent_monoid());
        let id = Functor::identity(m.clone());
        let e = m.find_morphism("e").unwrap();
        // component e: id => id is natural (e commutes with everything in {1, e})
        assert!(NaturalTransformation::new(id.clone(), id.clone(), vec![e]).is_ok());
        let s = Arc::new(split_idempotent());
        let ids = Functor::identity(s.clone());
        let es = s.find_morphism("e").unwrap();
        // endo-transformations of the identity: (id_x, id_y) and (e, id_y)
        let all = NaturalTransformation::enumerate(&ids, &ids);
        assert_eq!(all.len(), 2);
        assert_eq!(all[1].components(), &[es, s.identity(1)]);
        // (id_x, id_y) is fine but (e, id_y) composed wrongly-typed is rejected
        assert!(NaturalTransformation::unchecked(ids.clone(), ids, vec![es, es]).is_err());
        // id => trivial endofunctor of {1, e}: component 1 fails at e, component e works
        let trivial = Functor::constant(m.clone(), m.clone(), 0);
        let bad = NaturalTransformation::unchecked(id.clone(), trivial.clone(), vec![m.identity(0)]).unwrap();
        assert_eq!(bad.naturality_failure(), Some(e));
        assert!(NaturalTransformation::new(id, trivial, vec![e]).is_ok());
    }

    #[test]
    fn inverse_and_vertical_composition() {
        let c = Arc::new(chain3());
        let id = Functor::identity(c.clone());
        let t = NaturalTransformation::identity(&id);
        let inv = t.inverse().unwrap();
        assert_eq!(t.then(&inv).unwrap(), t);
    }
}
