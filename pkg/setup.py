import setuptools


def readme():
    with open("README.md", "r") as f:
        return f.read()


setuptools.setup(
    name="fairsum",
    version="0.1.0",
    description="Exact fair subset sum solver and price of fairness harness.",
    long_description=readme(),
    long_description_content_type="text/markdown",
    keywords="fairness subset_sum knapsack price_of_fairness",
    license="GPLv3+",
    classifiers=[
        "Development Status :: 4 - Beta",
        "License :: OSI Approved :: GNU General Public License v3 or later (GPLv3+)",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
    ],
    packages=setuptools.find_packages(include=["fairsum", "fairsum.*"]),
    install_requires=[
        "numpy>=1.21.0, <3.0.0",
        "sentry-sdk>=1.1.0, <3.0.0",
        "pandas>=1.3.0, <3.0.0",
        "filelock>=3.4.2, <4.0.0",
    ],
    extras_require={
        "test": [
            "pytest>=7.0.0",
            "hypothesis>=6.0.0",
        ]
    },
    entry_points={"console_scripts": ["fairsum=fairsum.cli:main"]},
    python_requires=">=3.8",
)
