"""Maps preserving the pencil of lines through o = (1:0:0).

The standard quadratic involution permutes these lines, inducing the swap
(x2 : x1) on P^1.  A de Jonquieres element fixes every line, and the section
sigma_1 lifts maps of P^1 back to the plane.
"""

from cremona.birmap import compose, new_map, standard_quadratic
from cremona.catalog import henon
from cremona.jonquieres import (
    base_context,
    in_image_sigma_ell,
    in_jon,
    in_star,
    jonquieres_element,
    rho,
    sigma_ell,
)
from cremona.polyring import VariableContext, parse_poly


def main():
    s = standard_quadratic()
    star = in_star(s)
    print(f"sigma: in Jon {in_jon(s)}, in Star {star.member}, induced map {star.quotient}")
    print(f"henon: in Star {in_star(henon()).member}")

    swap = new_map(1, ["x2", "x1"], base_context(2))
    lifted = sigma_ell(swap, 1)
    print(f"sigma_1{swap} = {lifted}, rho gives back {rho(lifted)}")
    print(f"in the image of sigma_2: {in_image_sigma_ell(lifted, 2)}")

    ctx = VariableContext.projective(2)
    j = jonquieres_element(parse_poly("x1 + x2", ctx), parse_poly("x1*x2", ctx), parse_poly("x2", ctx))
    print(f"Jon element {j}: in Jon {in_jon(j)}")
    print(f"rho(j o sigma_1(swap)) = {rho(compose(j, lifted))}")


if __name__ == "__main__":
    main()
