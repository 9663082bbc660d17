#include "burdenlab/panel_data.hpp"

namespace burdenlab {

std::string_view table3_fixture_csv() {
  static constexpr std::string_view kCsv = R"csv(code,region,1991,1992,1993,1994,1995,1996,1997,1998,1999,2000,2001,2002,2003,2004,2005,2006,2007,2008,2009,2010,2011,2012,2013,2014,2015,2016,2017,2018,2019,2020,2021,2022,2023
E1,global,23.9,25.5,26.0,27.9,31.2,31.9,31.8,31.7,32.8,33.9,33.7,35.0,39.2,44.2,47.8,51.9,58.4,64.2,60.9,66.7,74.2,75.9,78.1,80.2,75.7,77.0,82.0,87.2,88.5,86.1,98.4,102.4,107.0
E2,global,4.4,4.7,4.7,4.9,5.4,5.5,5.4,5.3,5.4,5.5,5.4,5.5,6.1,6.8,7.3,7.8,8.7,9.4,8.8,9.5,10.5,10.6,10.7,10.9,10.2,10.2,10.8,11.3,11.4,11.0,12.4,12.8,13.3
E3,global,9.0,7.6,7.1,10.2,9.1,6.5,5.6,5.1,3.0,3.4,3.8,2.9,3.0,3.5,4.1,4.3,4.8,8.9,2.9,3.3,4.8,3.7,2.7,2.4,1.4,1.6,2.3,2.4,2.2,1.9,3.5,7.9,5.9
ED1,global,97.9,97.3,97.4,97.6,97.6,97.2,97.5,97.7,98.4,98.9,100.3,100.3,101.9,102.6,102.9,103.3,104.0,104.2,103.9,103.7,103.7,103.8,103.9,102.6,102.0,103.1,102.7,100.1,100.2,100.7,100.5,101.7,101.8
ED2,global,51.5,52.7,54.0,54.7,55.3,56.1,56.9,57.3,57.7,58.5,60.3,62.0,62.8,63.8,64.8,65.5,67.3,68.8,70.0,71.6,72.9,73.5,74.9,75.7,75.7,75.8,75.5,76.0,76.3,76.8,77.5,77.6,77.1
ED3,global,13.7,14.0,14.4,15.0,15.6,16.3,17.0,17.5,18.4,19.0,20.2,21.5,22.6,23.6,24.3,25.4,26.4,27.4,28.4,29.7,31.4,32.5,33.4,35.9,37.0,37.5,37.9,38.3,39.1,40.1,41.4,42.4,43.3
ED4,global,-,-,-,-,-,-,-,-,4.1,3.9,4.0,4.0,4.2,4.1,4.1,4.2,4.1,4.3,4.5,4.1,4.1,4.2,4.3,4.3,4.2,4.2,4.2,4.1,4.1,4.4,4.2,3.8,-
S1,global,65.3,65.5,65.7,66.0,66.2,66.5,66.8,67.1,67.3,67.6,67.9,68.2,68.5,68.8,69.1,69.5,69.8,70.0,70.4,70.7,71.0,71.3,71.5,71.8,72.0,72.2,72.4,72.6,72.9,72.2,71.2,73.0,73.3
S2,global,5.1,5.3,5.6,5.8,5.9,6.0,6.0,6.2,6.3,6.1,6.2,6.4,6.5,6.3,6.2,6.0,5.8,5.8,6.4,6.3,6.2,6.2,6.1,6.0,6.0,6.0,5.9,5.8,5.6,6.6,6.1,5.3,4.9
S3,global,-,-,-,-,-,-,-,-,-,-,13.0,13.0,12.9,12.6,12.0,11.2,10.3,9.6,9.1,8.7,8.3,8.0,7.7,7.6,7.5,7.5,7.3,7.3,7.8,8.3,8.9,9.1,-
T1,global,-,-,-,-,-,-,-,-,-,-,-,-,-,-,15.6,17.2,20.2,22.8,25.3,28.4,30.9,33.3,35.3,37.4,39.8,42.8,45.2,48.5,52.9,58.6,61.7,63.7,65.4
T2,global,0.3,0.4,0.6,1.0,1.6,2.5,3.7,5.3,8.1,12.1,15.4,18.8,22.3,26.0,33.9,41.7,50.6,59.7,68.0,76.6,84.2,88.5,93.1,96.7,96.1,99.3,101.4,103.1,105.9,104.9,106.7,108.1,109.4
T3,global,-,-,-,-,-,-,-,-,-,-,-,-,-,-,3.4,4.3,5.2,6.1,6.9,7.6,8.6,9.2,9.7,10.1,11.3,12.2,13.5,14.0,14.7,15.6,16.8,17.7,18.6
T4,global,-,-,-,-,-,-,-,-,-,-,-,-,-,-,-,-,-,-,-,185.2,236.1,321.0,365.9,444.4,565.5,1249.8,3470.1,6087.1,9854.2,11366.7,12808.2,14527.7,15466.2
T5,global,-,-,-,-,-,-,-,-,-,15.1,14.6,14.8,14.9,15.2,14.3,14.2,13.1,12.2,13.1,12.9,11.6,11.5,11.3,11.4,11.9,12.1,12.3,12.5,12.5,13.4,13.2,11.9,-
)csv";
  return kCsv;
}

}  // namespace burdenlab
