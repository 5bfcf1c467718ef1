//! Homomorphisms between partially commutative rings given by generator
//! images: projections, identical simplifications, identifications on
//! connected components and the maps `φ_{λ,p}` that remove an unnecessary
//! endpoint of a tree.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::freemetab::{LieMonomial, LiePoly};
use crate::graph::{Graph, Vertex};
use crate::pcalg::PCAlgebra;

/// One identified component: every vertex of component `component` (1-based,
/// in the order of [`Graph::connected_components`]) goes to `scalars[k]`
/// times target vertex `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentifyRule {
    pub component: usize,
    pub target: Vertex,
    pub scalars: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiSpec {
    pub endpoint: Vertex,
    pub sib1: Vertex,
    pub sib2: Vertex,
    pub lambda: BigInt,
    pub p: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphMapSpec {
    /// Keep the listed vertices, send the others to 0.
    Projection { keep: Vec<Vertex> },
    /// Identity on generators, target graph has the extra edges.
    IdenticalSimplification { add_edges: Vec<(Vertex, Vertex)> },
    /// Components not mentioned are kept. In the target the kept vertices
    /// come first, in order, followed by new isolated vertices; a rule's
    /// `target` indexes this list.
    Identification { rules: Vec<IdentifyRule> },
    /// `endpoint -> λp·sib2 + λ·sib1`, all other generators fixed.
    Phi(PhiSpec),
}

/// A homomorphism `M(X;G) -> M(Y;H)` with its generator images.
#[derive(Debug, Clone)]
pub struct GraphMap {
    source: Graph,
    target: PCAlgebra,
    images: Vec<LiePoly>,
    /// Source vertex of every target vertex that is a kept source vertex.
    origin: Vec<Option<Vertex>>,
    warnings: Vec<String>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidMapSpec(msg.into())
}

fn gen(v: Vertex) -> LiePoly {
    LiePoly::generator(v)
}

impl GraphMap {
    pub fn new(source: &Graph, spec: &GraphMapSpec) -> Result<GraphMap> {
        let n = source.n();
        let mut warnings = Vec::new();
        let (target, images, origin) = match spec {
            GraphMapSpec::Projection { keep } => {
                if keep.is_empty() {
                    return Err(invalid("projection onto the empty set"));
                }
                for &v in keep {
                    source.check_vertex(v)?;
                }
                let r = source.induced_subgraph(keep);
                let images = source
                    .vertices()
                    .map(|v| r.position(v).map_or_else(LiePoly::zero, gen))
                    .collect();
                let origin = r.origin.iter().map(|&v| Some(v)).collect();
                (r.graph, images, origin)
            }
            GraphMapSpec::IdenticalSimplification { add_edges } => {
                let mut g = source.clone();
                for &(i, j) in add_edges {
                    if source.has_edge(i, j) {
                        return Err(invalid(format!("edge {{x{i},x{j}}} is already present")));
                    }
                    g.add_edge(i, j)
                        .map_err(|e| invalid(format!("cannot add edge {{x{i},x{j}}}: {e}")))?;
                }
                let images = source.vertices().map(gen).collect();
                let origin = source.vertices().map(Some).collect();
                (g, images, origin)
            }
            GraphMapSpec::Identification { rules } => {
                let all: Vec<Vertex> = source.vertices().collect();
                let blocks = source.connected_components(&all);
                if rules.is_empty() {
                    return Err(invalid("identification needs at least one component"));
                }
                let mut identified = vec![false; blocks.len()];
                for rule in rules {
                    let Some(flag) = rule.component.checked_sub(1).and_then(|k| identified.get_mut(k))
                    else {
                        return Err(invalid(format!(
                            "component {} does not exist (graph has {})",
                            rule.component,
                            blocks.len()
                        )));
                    };
                    if *flag {
                        return Err(invalid(format!("component {} listed twice", rule.component)));
                    }
                    *flag = true;
                    let size = blocks[rule.component - 1].len();
                    if rule.scalars.len() != size {
                        return Err(invalid(format!(
                            "component {} has {size} vertices but {} scalars were given",
                            rule.component,
                            rule.scalars.len()
                        )));
                    }
                    if rule.target == 0 {
                        return Err(invalid("target vertices are numbered from 1"));
                    }
                    if rule.scalars.iter().any(Zero::is_zero) {
                        warnings.push(format!(
                            "component {} has a zero scalar; some generators are sent to 0",
                            rule.component
                        ));
                    }
                }
                let kept: Vec<Vertex> = blocks
                    .iter()
                    .zip(&identified)
                    .filter(|(_, &f)| !f)
                    .flat_map(|(b, _)| b.iter().copied())
                    .collect();
                let r = source.induced_subgraph(&kept);
                let extra = rules
                    .iter()
                    .map(|rule| (rule.target as usize).saturating_sub(kept.len()))
                    .max()
                    .unwrap_or(0);
                let mut g = Graph::empty(kept.len() + extra);
                for (i, j) in r.graph.edges() {
                    g.add_edge(i, j).expect("edge of the kept subgraph");
                }
                let mut images = vec![LiePoly::zero(); n];
                for &v in &kept {
                    images[v as usize - 1] = gen(r.position(v).expect("kept vertex"));
                }
                for rule in rules {
                    for (&v, a) in blocks[rule.component - 1].iter().zip(&rule.scalars) {
                        images[v as usize - 1] = LiePoly::term(LieMonomial::generator(rule.target), a.clone());
                    }
                }
                let mut origin: Vec<Option<Vertex>> = r.origin.iter().map(|&v| Some(v)).collect();
                origin.resize(kept.len() + extra, None);
                (g, images, origin)
            }
            GraphMapSpec::Phi(phi) => {
                validate_phi(source, phi)?;
                let keep: Vec<Vertex> = source.vertices().filter(|&v| v != phi.endpoint).collect();
                let r = source.induced_subgraph(&keep);
                let pos = |v: Vertex| r.position(v).expect("sibling is kept");
                let mut images: Vec<LiePoly> = source
                    .vertices()
                    .map(|v| r.position(v).map_or_else(LiePoly::zero, gen))
                    .collect();
                let mut img = LiePoly::term(LieMonomial::generator(pos(phi.sib2)), &phi.lambda * &phi.p);
                img.add_term(LieMonomial::generator(pos(phi.sib1)), phi.lambda.clone());
                images[phi.endpoint as usize - 1] = img;
                let origin = r.origin.iter().map(|&v| Some(v)).collect();
                (r.graph, images, origin)
            }
        };
        Ok(GraphMap {
            source: source.clone(),
            target: PCAlgebra::new(target),
            images,
            origin,
            warnings,
        })
    }

    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn target(&self) -> &PCAlgebra {
        &self.target
    }

    /// Image of the generator `v` of the source.
    pub fn image_of(&self, v: Vertex) -> &LiePoly {
        &self.images[v as usize - 1]
    }

    /// For each target vertex, the source vertex it comes from, if any.
    pub fn origin(&self) -> &[Option<Vertex>] {
        &self.origin
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Image of a polynomial written in the source basis, in canonical form
    /// in the target.
    pub fn apply(&self, p: &LiePoly) -> LiePoly {
        let mut out = LiePoly::zero();
        for (m, c) in p.iter() {
            let mut letters = m.letters().iter();
            let first = letters.next().expect("monomials are non-empty");
            let mut acc = self.image_of(*first).clone();
            for &v in letters {
                if acc.is_zero() {
                    break;
                }
                acc = self.target.bracket(&acc, self.image_of(v));
            }
            out.add_scaled(&acc, c);
        }
        self.target.reduce(&out)
    }
}

impl fmt::Display for GraphMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in self.source.vertices() {
            writeln!(f, "x{v} -> {}", self.image_of(v))?;
        }
        Ok(())
    }
}

fn validate_phi(g: &Graph, phi: &PhiSpec) -> Result<()> {
    if !g.is_tree() {
        return Err(invalid("phi maps are defined for trees"));
    }
    for v in [phi.endpoint, phi.sib1, phi.sib2] {
        g.check_vertex(v).map_err(|e| invalid(e.to_string()))?;
    }
    if !g.classify_vertices().unnecessary_endpoints.contains(&phi.endpoint) {
        return Err(invalid(format!("x{} is not an unnecessary endpoint", phi.endpoint)));
    }
    let center = g.neighbors(phi.endpoint)[0];
    if phi.sib1 == phi.sib2 {
        return Err(invalid("the two siblings must be distinct"));
    }
    for s in [phi.sib1, phi.sib2] {
        if s == phi.endpoint || !g.has_edge(s, center) {
            return Err(invalid(format!(
                "x{s} is not a sibling of x{} (a neighbor of x{center} other than the endpoint)",
                phi.endpoint
            )));
        }
    }
    Ok(())
}

impl GraphMapSpec {
    /// Reads the line-based spec format:
    ///
    /// ```text
    /// keep 1 2 3
    /// addedge 1 3
    /// identify comp=2 target=5 scalars=1,2
    /// phi endpoint=5 sib1=3 sib2=4 lambda=2 p=3
    /// ```
    ///
    /// `addedge` and `identify` lines accumulate; kinds cannot be mixed.
    pub fn parse(text: &str) -> Result<GraphMapSpec> {
        let mut spec: Option<GraphMapSpec> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let mut words = content.split_whitespace();
            let Some(keyword) = words.next() else {
                continue;
            };
            let args: Vec<&str> = words.collect();
            let column = raw.find(keyword).map_or(1, |c| c + 1);
            let number = |w: &str| -> Result<Vertex> {
                w.parse::<Vertex>().map_err(|_| {
                    Error::syntax(line, raw.find(w).map_or(1, |c| c + 1), format!("expected a vertex index, found `{w}`"))
                })
            };
            let field = |name: &str| -> Result<&str> {
                args.iter()
                    .find_map(|a| a.strip_prefix(name).and_then(|r| r.strip_prefix('=')))
                    .ok_or_else(|| Error::syntax(line, column, format!("missing `{name}=`")))
            };
            let integer = |name: &str| -> Result<BigInt> {
                let w = field(name)?;
                w.parse::<BigInt>()
                    .map_err(|_| Error::syntax(line, column, format!("`{name}` must be an integer, found `{w}`")))
            };
            let mixed = || Error::semantic(line, "a map spec holds one kind of map");
            match keyword {
                "keep" => {
                    if spec.is_some() {
                        return Err(mixed());
                    }
                    let keep = args.iter().map(|w| number(w)).collect::<Result<Vec<_>>>()?;
                    spec = Some(GraphMapSpec::Projection { keep });
                }
                "addedge" => {
                    let [a, b] = args[..] else {
                        return Err(Error::syntax(line, column, "expected `addedge I J`"));
                    };
                    let e = (number(a)?, number(b)?);
                    match &mut spec {
                        None => spec = Some(GraphMapSpec::IdenticalSimplification { add_edges: vec![e] }),
                        Some(GraphMapSpec::IdenticalSimplification { add_edges }) => add_edges.push(e),
                        Some(_) => return Err(mixed()),
                    }
                }
                "identify" => {
                    let component = number(field("comp")?)? as usize;
                    let target = number(field("target")?)?;
                    let scalars = field("scalars")?
                        .split(',')
                        .map(|w| {
                            w.parse::<BigInt>().map_err(|_| {
                                Error::syntax(line, column, format!("scalar must be an integer, found `{w}`"))
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let rule = IdentifyRule { component, target, scalars };
                    match &mut spec {
                        None => spec = Some(GraphMapSpec::Identification { rules: vec![rule] }),
                        Some(GraphMapSpec::Identification { rules }) => rules.push(rule),
                        Some(_) => return Err(mixed()),
                    }
                }
                "phi" => {
                    if spec.is_some() {
                        return Err(mixed());
                    }
                    spec = Some(GraphMapSpec::Phi(PhiSpec {
                        endpoint: number(field("endpoint")?)?,
                        sib1: number(field("sib1")?)?,
                        sib2: number(field("sib2")?)?,
                        lambda: integer("lambda")?,
                        p: integer("p")?,
                    }));
                }
                other => {
                    return Err(Error::syntax(line, column, format!("unknown map keyword `{other}`")));
                }
            }
        }
        spec.ok_or_else(|| Error::semantic(1, "empty map spec"))
    }
}

/// Where a `φ` map acts: an unnecessary endpoint and two other neighbors of
/// its neighbor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhiSite {
    pub endpoint: Vertex,
    pub sib1: Vertex,
    pub sib2: Vertex,
}

impl PhiSite {
    /// The smallest unnecessary endpoint and the two smallest other
    /// neighbors of its neighbor.
    pub fn auto(g: &Graph) -> Result<PhiSite> {
        if !g.is_tree() {
            return Err(Error::NotATree);
        }
        let endpoint = *g
            .classify_vertices()
            .unnecessary_endpoints
            .first()
            .ok_or_else(|| invalid("tree has no unnecessary endpoint"))?;
        let center = g.neighbors(endpoint)[0];
        let mut sibs = g.neighbors(center).iter().copied().filter(|&v| v != endpoint);
        let sib1 = sibs.next().expect("center has degree at least 3");
        let sib2 = sibs.next().expect("center has degree at least 3");
        Ok(PhiSite { endpoint, sib1, sib2 })
    }

    pub fn spec(&self, lambda: impl Into<BigInt>, p: impl Into<BigInt>) -> GraphMapSpec {
        GraphMapSpec::Phi(PhiSpec {
            endpoint: self.endpoint,
            sib1: self.sib1,
            sib2: self.sib2,
            lambda: lambda.into(),
            p: p.into(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhiSearch {
    Found { lambda: u64, p: u64 },
    /// No pair with `p, λ <= bound` works.
    NotFound { bound: u64 },
}

/// Elements that must stay nonzero for `φ` to embed `Γ` as a partial
/// algebra: `g_i - g_j`, `g_i + g_j - g_k`, `[g_i, g_j] - g_k` and `Γ`
/// itself, with the ones already zero in the source dropped.
pub fn closure(alg: &PCAlgebra, gamma: &[LiePoly]) -> Result<Vec<LiePoly>> {
    let gamma: Vec<LiePoly> = gamma.iter().map(|g| alg.reduce(g)).collect();
    if gamma.iter().any(LiePoly::is_zero) {
        return Err(Error::InvalidInput("the set contains 0, which no map keeps nonzero".into()));
    }
    let mut out: Vec<LiePoly> = gamma.clone();
    for (i, a) in gamma.iter().enumerate() {
        for (j, b) in gamma.iter().enumerate() {
            if i != j {
                out.push(a - b);
            }
            let sum = a + b;
            let br = alg.bracket(a, b);
            for c in &gamma {
                out.push(&sum - c);
                out.push(&br - c);
            }
        }
    }
    out.retain(|e| !e.is_zero());
    out.sort_by(|a, b| a.iter().cmp(b.iter()));
    out.dedup();
    Ok(out)
}

/// Smallest `(p, λ)`, `p` first, with every closure element of `Γ` mapped
/// to a nonzero element by `φ_{λ,p}`.
pub fn find_injective_phi(
    alg: &PCAlgebra,
    site: PhiSite,
    gamma: &[LiePoly],
    bound: u64,
) -> Result<PhiSearch> {
    for g in gamma {
        alg.check_poly(g)?;
    }
    let elements = closure(alg, gamma)?;
    GraphMap::new(alg.graph(), &site.spec(1, 1))?;
    for p in 1..=bound {
        for lambda in 1..=bound {
            let map = GraphMap::new(alg.graph(), &site.spec(lambda, p))?;
            if elements.iter().all(|e| !map.apply(e).is_zero()) {
                return Ok(PhiSearch::Found { lambda, p });
            }
        }
    }
    Ok(PhiSearch::NotFound { bound })
}

/// Default bound of the `φ` search for both `p` and `λ`.
pub const DEFAULT_PHI_BOUND: u64 = 64;
