import numpy as np
import pytest

from proxops import liegroup as lg


def random_rotvec(rng, max_angle):
    axis = rng.normal(size=3)
    axis /= np.linalg.norm(axis)
    return axis * rng.uniform(0.0, max_angle)


def random_chart_coords(rng, max_angle=np.pi - 0.01, b_scale=50.0):
    gamma = random_rotvec(rng, max_angle)
    b = rng.uniform(-b_scale, b_scale, size=3)
    return np.concatenate([gamma, b])


def random_pose(rng, max_angle=np.pi - 0.1, b_scale=20.0):
    return lg.exp_se3(random_chart_coords(rng, max_angle, b_scale))


def rodrigues_reference(gamma):
    # independent oracle: axis-angle Rodrigues formula, written out
    theta = np.linalg.norm(gamma)
    if theta == 0.0:
        return np.eye(3)
    k = gamma / theta
    kx = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]])
    return np.eye(3) + np.sin(theta) * kx + (1 - np.cos(theta)) * (kx @ kx)


class TestHat3:
    def test_zero(self):
        assert np.array_equal(lg.hat3([0, 0, 0]), np.zeros((3, 3)))

    def test_cross_product_identity(self):
        assert np.allclose(lg.hat3([1, 0, 0]) @ [0, 1, 0], [0, 0, 1])
        rng = np.random.default_rng(7)
        for _ in range(50):
            w, u = rng.normal(size=3), rng.normal(size=3)
            assert np.allclose(lg.hat3(w) @ u, np.cross(w, u))
            assert np.allclose(lg.hat3(w) @ u, -(lg.hat3(u) @ w))

    def test_antisymmetry(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            w = rng.normal(size=3)
            wx = lg.hat3(w)
            assert np.array_equal(wx.T, -wx)


class TestSo3:
    def test_exp_identity(self):
        assert np.allclose(lg.exp_so3([0, 0, 0]), np.eye(3))

    def test_quarter_turn_about_z(self):
        r = lg.exp_so3([0, 0, np.pi / 2])
        assert np.allclose(r @ [1, 0, 0], [0, 1, 0], atol=1e-12)
        assert np.allclose(r, rodrigues_reference(np.array([0, 0, np.pi / 2])))

    def test_matches_rodrigues(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            gamma = random_rotvec(rng, 3.1)
            assert np.allclose(lg.exp_so3(gamma), rodrigues_reference(gamma), atol=1e-13)

    def test_rotation_angle_is_norm(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            gamma = random_rotvec(rng, np.pi - 0.01)
            assert lg.rotation_angle(lg.exp_so3(gamma)) == pytest.approx(
                np.linalg.norm(gamma), abs=1e-9
            )

    def test_roundtrip(self):
        rng = np.random.default_rng(1)
        worst = 0.0
        for _ in range(1000):
            gamma = random_rotvec(rng, 3.0)
            worst = max(worst, np.abs(lg.log_so3(lg.exp_so3(gamma)) - gamma).max())
        assert worst < 1e-10

    def test_log_near_pi_raises(self):
        with pytest.raises(lg.OutOfChartError):
            lg.log_so3(lg.exp_so3([np.pi, 0, 0]))

    def test_small_angle_branch(self):
        gamma = np.array([1e-6, -2e-6, 3e-7])
        assert np.allclose(lg.log_so3(lg.exp_so3(gamma)), gamma, atol=1e-18)


class TestSe3:
    def test_exp_zero_is_identity(self):
        pose = lg.exp_se3(np.zeros(6))
        assert np.array_equal(pose.rotation, np.eye(3))
        assert np.array_equal(pose.position, np.zeros(3))

    def test_pure_translation(self):
        rho = np.array([0, 0, 0, 1.5, -2.0, 0.25])
        pose = lg.exp_se3(rho)
        assert np.allclose(pose.rotation, np.eye(3))
        assert np.allclose(pose.position, rho[3:])

    def test_roundtrip(self):
        rng = np.random.default_rng(2)
        worst = 0.0
        for _ in range(1000):
            rho = random_chart_coords(rng)
            worst = max(worst, np.abs(lg.log_se3(lg.exp_se3(rho)) - rho).max())
        assert worst < 1e-10

    def test_compose_inverse(self):
        rng = np.random.default_rng(9)
        for _ in range(50):
            pose = random_pose(rng)
            ident = pose.compose(pose.inverse())
            assert np.allclose(ident.rotation, np.eye(3), atol=1e-12)
            assert np.allclose(ident.position, 0.0, atol=1e-10)

    def test_compose_associative(self):
        rng = np.random.default_rng(13)
        a, b, c = (random_pose(rng) for _ in range(3))
        left = a.compose(b).compose(c)
        right = a.compose(b.compose(c))
        assert np.allclose(left.matrix(), right.matrix(), atol=1e-12)


class TestAdjoint:
    def test_identity(self):
        assert np.array_equal(lg.adjoint(lg.Pose.identity()), np.eye(6))

    def test_homomorphism(self):
        rng = np.random.default_rng(4)
        worst = 0.0
        for _ in range(100):
            p1, p2 = random_pose(rng), random_pose(rng)
            lhs = lg.adjoint(p1.compose(p2))
            rhs = lg.adjoint(p1) @ lg.adjoint(p2)
            worst = max(worst, np.abs(lhs - rhs).max())
        assert worst < 1e-10

    def test_inverse_consistency(self):
        rng = np.random.default_rng(6)
        for _ in range(20):
            pose = random_pose(rng)
            assert np.allclose(
                lg.adjoint(pose.inverse()), np.linalg.inv(lg.adjoint(pose)), atol=1e-9
            )

    def test_block_structure(self):
        rng = np.random.default_rng(8)
        pose = random_pose(rng)
        ad = lg.adjoint(pose)
        assert np.array_equal(ad[:3, 3:], np.zeros((3, 3)))
        assert np.array_equal(ad[:3, :3], pose.rotation)
        assert np.array_equal(ad[3:, 3:], pose.rotation)
        assert np.allclose(ad[3:, :3], lg.hat3(pose.position) @ pose.rotation)

    def test_coad_star_matches_euler_term(self):
        # For xi = [w; 0] and momentum P xi = [J w; 0], the rotational block
        # of ad*_xi P xi must be (J w) x w, the gyroscopic term of the
        # componentwise Euler equation.
        rng = np.random.default_rng(10)
        j = np.diag([20.0, 22.0, 25.0])
        for _ in range(50):
            w = rng.normal(size=3)
            xi = np.concatenate([w, np.zeros(3)])
            mu = np.concatenate([j @ w, np.zeros(3)])
            out = lg.coad_star(xi, mu)
            assert np.allclose(out[:3], np.cross(j @ w, w), atol=1e-12)
            assert np.allclose(out[3:], 0.0)

    def test_coad_star_is_ad_transpose(self):
        rng = np.random.default_rng(12)
        for _ in range(50):
            xi, mu = rng.normal(size=6), rng.normal(size=6)
            assert np.allclose(lg.coad_star(xi, mu), lg.ad_matrix(xi).T @ mu, atol=1e-12)


def jl_quadrature(rho, n=40):
    # Independent oracle: J_l(rho) = int_0^1 Ad_{exp(s rho)} ds.
    x, w = np.polynomial.legendre.leggauss(n)
    nodes = 0.5 * (x + 1.0)
    weights = 0.5 * w
    out = np.zeros((6, 6))
    for s, wt in zip(nodes, weights):
        out += wt * lg.adjoint(lg.exp_se3(s * rho))
    return out


class TestKinematicsJacobian:
    def test_identity_at_origin(self):
        assert np.array_equal(lg.kinematics_jacobian(np.zeros(6)), np.eye(6))

    def test_matches_quadrature_oracle(self):
        rng = np.random.default_rng(14)
        worst = 0.0
        for _ in range(100):
            rho = random_chart_coords(rng, np.pi - 0.05, 30.0)
            g = lg.kinematics_jacobian(rho)
            worst = max(worst, np.abs(g - np.linalg.inv(jl_quadrature(-rho))).max())
        assert worst < 1e-10

    def test_finite_difference(self):
        # central difference of the logarithm along the group flow
        rng = np.random.default_rng(15)
        h = 1e-6
        worst = 0.0
        for _ in range(100):
            rho = random_chart_coords(rng, 2.0, 2.0)
            xi = rng.normal(size=6)
            pose = lg.exp_se3(rho)
            fp = lg.log_se3(pose.compose(lg.exp_se3(h * xi)))
            fm = lg.log_se3(pose.compose(lg.exp_se3(-h * xi)))
            fd = (fp - fm) / (2.0 * h)
            pred = lg.kinematics_jacobian(rho) @ xi
            worst = max(worst, np.linalg.norm(fd - pred) / np.linalg.norm(fd))
        assert worst < 1e-6

    def test_commuting_flow(self):
        # gamma = 0 and velocity parallel to the translation: rhodot == xi
        rho = np.array([0, 0, 0, 2.0, 0, 0])
        xi = np.array([0, 0, 0, 0.7, 0, 0])
        assert np.allclose(lg.kinematics_jacobian(rho) @ xi, xi, atol=1e-14)

    def test_out_of_chart_raises(self):
        rho = np.zeros(6)
        rho[0] = np.pi
        with pytest.raises(lg.OutOfChartError):
            lg.kinematics_jacobian(rho)

    def test_inverse_of_right_jacobian(self):
        rng = np.random.default_rng(16)
        for _ in range(50):
            rho = random_chart_coords(rng, np.pi - 0.05, 20.0)
            jr = jl_quadrature(-rho)
            assert np.allclose(lg.kinematics_jacobian(rho) @ jr, np.eye(6), atol=1e-9)
