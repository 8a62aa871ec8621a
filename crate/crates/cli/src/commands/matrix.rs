use anyhow::{bail, Result};
use krall_core::families::operator_of;
use krall_core::matrices::{
    christoffel, collocation_rep, collocation_rep_simplified, diffmat, tau_rep, transition, transition_general,
    DiffMethod, MatrixRep,
};
use krall_core::{FamilySpec, NodeSet, Scalar};

use super::{exact_family_and_zeros, meta, number, with_scalar};
use crate::cli::{MatrixArgs, MatrixKind, Method};
use crate::config::RunConfig;
use crate::output::{Document, MatrixOut};

pub fn run(cfg: &RunConfig, args: &MatrixArgs) -> Result<Document> {
    if cfg.families.len() > 1 {
        bail!("matrix takes a single family");
    }
    if cfg.ns.len() > 1 {
        bail!("matrix takes a single N, not a range");
    }
    let mut doc = Document::new(meta(cfg));
    doc.matrix = Some(with_scalar!(cfg.mode, build(cfg, args))?);
    Ok(doc)
}

fn build<T: Scalar>(cfg: &RunConfig, args: &MatrixArgs) -> Result<MatrixOut> {
    let spec_q = cfg.families.first();
    let n = cfg.ns.first().copied();
    let nodes = match (&args.nodes, spec_q, n) {
        (Some(points), _, _) => {
            if n.is_some_and(|n| n != points.len()) {
                bail!("--n {} does not match the {} nodes given", n.unwrap(), points.len());
            }
            Some(NodeSet::from_points(points.clone())?)
        }
        (None, Some(spec), Some(n)) => Some(exact_family_and_zeros::<T>(spec, n, cfg)?.1),
        _ => None,
    };
    let at_zeros = args.nodes.is_none();
    let need_family = || -> Result<FamilySpec<T>> {
        match spec_q {
            Some(s) => Ok(s.map(T::from_rational)),
            None => bail!("--kind {:?} needs --family", args.kind),
        }
    };
    let need_nodes = || -> Result<&NodeSet> {
        match &nodes {
            Some(ns) => Ok(ns),
            None => bail!("give --nodes, or --family with --n to use the zeros of p_N"),
        }
    };
    let (rep, kind): (MatrixRep<T>, String) = match args.kind {
        MatrixKind::Ztilde => {
            let method = match args.method {
                Method::Explicit => DiffMethod::Explicit,
                Method::Recursive => DiffMethod::Recursive,
                Method::Alternative => DiffMethod::Alternative,
            };
            (
                diffmat(args.order, need_nodes()?, method)?,
                format!("ztilde({})", args.order),
            )
        }
        MatrixKind::Dc => {
            let spec = need_family()?;
            let nodes = need_nodes()?;
            let rep = if at_zeros {
                collocation_rep_simplified(&spec, nodes, cfg.settings(args.form).form)?
            } else {
                collocation_rep(&operator_of(&spec), nodes)
            };
            (rep, "dc".into())
        }
        MatrixKind::Dtau => {
            let spec = need_family()?;
            let Some(n) = n.or(args.nodes.as_ref().map(Vec::len)) else {
                bail!("--kind dtau needs --n");
            };
            (tau_rep(&operator_of(&spec), &spec, n)?, "dtau".into())
        }
        MatrixKind::L | MatrixKind::Linv => {
            let spec = need_family()?;
            let nodes = need_nodes()?;
            let (l, l_inv) = if at_zeros {
                transition(nodes, &spec)?
            } else {
                transition_general(nodes, &spec)?
            };
            if args.kind == MatrixKind::L {
                (l, "L".into())
            } else {
                (l_inv, "Linv".into())
            }
        }
        MatrixKind::Lambda => (christoffel(need_nodes()?, &need_family()?)?, "lambda".into()),
    };
    Ok(MatrixOut {
        kind,
        provenance: rep.provenance().to_string(),
        dim: rep.dim(),
        flagged: rep.flagged().iter().map(|i| i + 1).collect(),
        rows: rep.rows().iter().map(|row| row.iter().map(number).collect()).collect(),
    })
}
