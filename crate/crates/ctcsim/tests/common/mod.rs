//! Shared test helpers: a deterministic generator of valid DSL programs.

/// Small multiplicative congruential generator; good enough to diversify
/// generated programs while staying fully reproducible.
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg(seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        // xorshift64*
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n.max(1)
    }

    pub fn chance(&mut self, percent: u64) -> bool {
        self.below(100) < percent
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len() as u64) as usize]
    }
}

const VARS: [&str; 4] = ["x", "y", "z", "w"];

fn gen_expr(rng: &mut Lcg, depth: u32) -> String {
    if depth == 0 || rng.chance(50) {
        match rng.below(3) {
            0 => format!("{}", rng.below(19) as i64 - 9),
            1 => rng.pick(&VARS).to_string(),
            _ => "input".to_string(),
        }
    } else {
        let op = *rng.pick(&["+", "-", "*", "mod"]);
        let lhs = gen_expr(rng, depth - 1);
        let rhs = gen_expr(rng, depth - 1);
        if rng.chance(30) {
            format!("({lhs}) {op} ({rhs})")
        } else {
            format!("{lhs} {op} {rhs}")
        }
    }
}

fn gen_cond(rng: &mut Lcg, depth: u32) -> String {
    if depth == 0 || rng.chance(55) {
        let op = *rng.pick(&["==", "!=", "<", ">", "<=", ">="]);
        format!("{} {} {}", gen_expr(rng, 1), op, gen_expr(rng, 1))
    } else {
        match rng.below(3) {
            0 => format!("{} and {}", gen_cond(rng, depth - 1), gen_cond(rng, depth - 1)),
            1 => format!("{} or {}", gen_cond(rng, depth - 1), gen_cond(rng, depth - 1)),
            _ => format!("not ({})", gen_cond(rng, depth - 1)),
        }
    }
}

/// Generate a syntactically valid DSL program: declared registers, unique
/// labels, resolvable goto targets, at most one receive per register.
pub fn generate_program(seed: u64) -> String {
    let mut rng = Lcg::new(seed);
    let mut out = format!("program gen{seed}\n");

    let reg_count = rng.below(4) as usize;
    let regs: Vec<String> = (0..reg_count).map(|i| format!("r{i}")).collect();
    for reg in &regs {
        let initial = rng.below(7) as i64 - 3;
        if rng.chance(50) {
            out.push_str(&format!("ttreg {reg} init {initial} domain auto\n"));
        } else {
            let lo = rng.below(5) as i64 - 2;
            let hi = lo + rng.below(6) as i64;
            out.push_str(&format!("ttreg {reg} init {initial} domain {lo}..{hi}\n"));
        }
    }

    let stmt_count = 3 + rng.below(10) as usize;
    // Label a random nonempty subset of statement positions.
    let mut labels: Vec<Option<String>> = (0..stmt_count)
        .map(|i| rng.chance(40).then(|| format!("L{i}")))
        .collect();
    if labels.iter().all(|l| l.is_none()) {
        labels[0] = Some("L0".to_string());
    }
    let label_names: Vec<String> = labels.iter().flatten().cloned().collect();

    // Each register is received at most once, at its own position.
    let mut receives: Vec<Option<&String>> = vec![None; stmt_count];
    for reg in &regs {
        if rng.chance(70) {
            let pos = rng.below(stmt_count as u64) as usize;
            if receives[pos].is_none() {
                receives[pos] = Some(reg);
            }
        }
    }

    for (i, label) in labels.iter().enumerate() {
        let instr = if let Some(reg) = receives[i] {
            format!("receive {reg} -> {}", rng.pick(&VARS))
        } else {
            match rng.below(6) {
                0 => format!("{} = {}", rng.pick(&VARS), gen_expr(&mut rng, 2)),
                1 if !regs.is_empty() => {
                    format!("send {} {}", rng.pick(&regs), gen_expr(&mut rng, 2))
                }
                2 => format!("if {} goto {}", gen_cond(&mut rng, 2), rng.pick(&label_names)),
                3 => format!("goto {}", rng.pick(&label_names)),
                4 => format!("output {}", gen_expr(&mut rng, 2)),
                _ => "halt".to_string(),
            }
        };
        match label {
            Some(name) => out.push_str(&format!("{name}: {instr}\n")),
            None => out.push_str(&format!("  {instr}\n")),
        }
    }
    out.push_str("  halt\n");
    out
}
