from setuptools import setup, find_packages

setup(
    name="greensphere",
    version="1.0.0",
    description="Exact arithmetic for the C2-equivariant K(1)-local sphere",
    packages=find_packages(exclude=["tests"]),   # finds the `greensphere` package
    install_requires=[
        "toml",
        "sympy>=1.14",
    ],
    extras_require={
        "test": ["pytest"],
    },
    package_data={
        # config and the relation tables end up in the wheel
        "greensphere": ["config.toml", "data/*.toml"],
    },
    include_package_data=True,
    entry_points={
        "console_scripts": [
            "greensphere = greensphere.app:main",
        ],
    },
    python_requires=">=3.9",
)
