import sys

from flask import Flask, abort, jsonify

from pareto_rules.rolling import load_reports, reports_to_frame


app = Flask(__name__)
app.debug = True
app.config['REPORT_PATH'] = 'report.json'


def reports():
    return load_reports(app.config['REPORT_PATH'])


@app.route('/')
def index():
    return jsonify([
        {'window': report.label, 'strategies': len(report.strategies)}
        for report in reports()
    ])


@app.route('/window/<int:train_start>/<int:train_end>/<int:test>')
def window(train_start, train_end, test):
    for report in reports():
        spec = report.spec
        if (spec.train_start_year, spec.train_end_year, spec.test_year) == \
                (train_start, train_end, test):
            return jsonify(report.to_dict())
    abort(404)


@app.route('/table')
def table():
    return reports_to_frame(reports()).to_html(index=False)


if __name__ == '__main__':
    if len(sys.argv) > 1:
        app.config['REPORT_PATH'] = sys.argv[1]
    app.run()
